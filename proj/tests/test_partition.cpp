#include <doctest.h>

#include <numeric>

#include "caperc/partition.hpp"
#include "caperc/rng.hpp"

using namespace caperc;

namespace {
Partition random_partition(int n, int blocks, rng::Engine& eng) {
    std::uniform_int_distribution<int> pick(0, blocks - 1);
    std::vector<int> raw(static_cast<std::size_t>(n));
    for (auto& x : raw) x = pick(eng);
    return Partition::from_labels(raw);
}
}  // namespace

TEST_CASE("labels canonicalize to minimum-element representatives") {
    const auto p = Partition::from_labels({7, 3, 7, 3, 9});
    CHECK(p.label(0) == 0);
    CHECK(p.label(2) == 0);
    CHECK(p.label(1) == 1);
    CHECK(p.label(3) == 1);
    CHECK(p.label(4) == 4);
    CHECK(p.block_count() == 3);
    CHECK(p.block_of(1) == std::vector<int>{1, 3});

    const auto s = Partition::singletons(4);
    CHECK(s.block_count() == 4);
    for (int v = 0; v < 4; ++v) CHECK(s.label(v) == v);
}

TEST_CASE("union-find produces canonical partitions") {
    UnionFind uf(6);
    uf.unite(4, 2);
    uf.unite(2, 5);
    uf.unite(0, 1);
    auto p = uf.to_partition();
    CHECK(p.label(4) == 2);
    CHECK(p.label(5) == 2);
    CHECK(p.label(1) == 0);
    CHECK(p.label(3) == 3);
    CHECK(p.block_count() == 3);
}

TEST_CASE("meet is the coarsest common refinement") {
    rng::Engine eng(5);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 30;
        const auto p = random_partition(n, 4, eng);
        const auto q = random_partition(n, 3, eng);
        const auto m = meet(p, q);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                const bool together = p.label(u) == p.label(v) && q.label(u) == q.label(v);
                CHECK((m.label(u) == m.label(v)) == together);
            }
        CHECK(meet(p, q) == meet(q, p));
        CHECK(meet(p, p) == p);
        CHECK(meet(p, Partition::singletons(n)) == Partition::singletons(n));
    }
}

TEST_CASE("size census satisfies the partition identity") {
    const auto p = Partition::from_labels({0, 0, 1, 1, 1, 5, 6, 6});
    const auto census = size_census(p);
    CHECK(census.at(1) == 1);
    CHECK(census.at(2) == 2);
    CHECK(census.at(3) == 1);
    long long total = 0;
    for (const auto& [size, count] : census) total += size * count;
    CHECK(total == p.n());
}

TEST_CASE("dump lists blocks by representative") {
    const auto p = Partition::from_labels({1, 1, 2, 2, 9});
    CHECK(dump(p) == "block 0: 0 1\nblock 2: 2 3\nblock 4: 4\n");
}
