#include <doctest.h>

#include <cmath>
#include <set>

#include "caperc/graph.hpp"
#include "caperc/rng.hpp"

using namespace caperc;

TEST_CASE("derive gives distinct, order-independent child streams") {
    const std::uint64_t s = 42;
    CHECK(rng::derive(s, 0) != rng::derive(s, 1));
    CHECK(rng::derive(s, 1) != rng::derive(s, 2));
    CHECK(rng::derive(s, 0, 1) != rng::derive(s, 1, 0));
    // pure function of the path, not of evaluation order
    CHECK(rng::derive(s, 7, 3) == rng::derive(rng::derive(s, 7), 3));
    static_assert(rng::splitmix64(0) != 0);
}

TEST_CASE("ColorParams sorts non-increasing and validates") {
    const auto p = ColorParams::make({0.5, 1.5, 1.0});
    CHECK(p.k == 3);
    CHECK(p.lambdas == std::vector<double>{1.5, 1.0, 0.5});
    CHECK(p.Lambda == doctest::Approx(3.0));
    CHECK(p.lambda_star == std::vector<double>{1.5, 2.0, 2.5});
    CHECK_THROWS_AS(ColorParams::make({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ColorParams::make({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ColorParams::make({1.0, -0.5}), std::invalid_argument);
}

TEST_CASE("generate is a pure function of (params, n, seed)") {
    const auto params = ColorParams::make({1.2, 0.7});
    const auto g1 = generate(params, 500, 99);
    const auto g2 = generate(params, 500, 99);
    const auto g3 = generate(params, 500, 100);
    CHECK(g1.layers == g2.layers);
    CHECK(g1.layers != g3.layers);
}

TEST_CASE("generated layers are sorted simple edge lists with sane counts") {
    const int n = 2000;
    const auto params = ColorParams::make({1.2, 0.7});
    const auto g = generate(params, n, 7);
    for (int i = 0; i < g.k; ++i) {
        const auto& layer = g.layers[static_cast<std::size_t>(i)];
        std::set<Edge> uniq(layer.begin(), layer.end());
        CHECK(uniq.size() == layer.size());
        CHECK(std::is_sorted(layer.begin(), layer.end()));
        for (const auto& [u, v] : layer) {
            CHECK(u < v);
            CHECK(u >= 0);
            CHECK(v < n);
        }
        // Binomial(n(n-1)/2, lambda/n): stay within 5 sigma of the mean.
        const double lam = params.lambdas[static_cast<std::size_t>(i)];
        const double mean = lam * (n - 1) / 2.0;
        const double sigma = std::sqrt(mean * (1.0 - lam / n));
        CHECK(std::fabs(static_cast<double>(layer.size()) - mean) < 5.0 * sigma);
    }
}

TEST_CASE("view selects layers and keeps multi-colored pairs alive") {
    ColoredMultigraph g;
    g.n = 3;
    g.k = 2;
    g.layers = {{{0, 1}, {1, 2}}, {{0, 1}}};

    CHECK(GraphView(g, ViewMode::All).edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK(GraphView(g, ViewMode::Only, {1}).edges() == std::vector<Edge>{{0, 1}});
    // avoiding color 0: the (0,1) pair survives through color 1
    CHECK(GraphView(g, ViewMode::Avoid, {0}).edges() == std::vector<Edge>{{0, 1}});
    CHECK(GraphView(g, ViewMode::Avoid, {1}).edges() == std::vector<Edge>{{0, 1}, {1, 2}});

    int visits = 0;
    GraphView(g, ViewMode::All).for_each_edge([&](int, int) { ++visits; });
    CHECK(visits == 3);  // (0,1) visited once per layer holding it
    CHECK_THROWS_AS(GraphView(g, ViewMode::Only, {2}), std::out_of_range);
}

TEST_CASE("ladder fixture has the advertised layer structure") {
    for (int ell : {1, 2, 3}) {
        const auto g = figure1_gadget(ell, false);
        CHECK(g.n == 2 * (2 * ell + 2));
        CHECK(g.k == 3);
        CHECK(g.layers[0].size() == static_cast<std::size_t>(2 * (ell + 1)));  // blue
        CHECK(g.layers[1].size() == static_cast<std::size_t>(2 * ell));        // red
        CHECK(g.layers[2].size() == static_cast<std::size_t>(2 * ell + 1));    // green rungs
        const auto closed = figure1_gadget(ell, true);
        CHECK(closed.edge_count() == g.edge_count() + 1);
    }
    CHECK_THROWS_AS(figure1_gadget(0, false), std::invalid_argument);
}

TEST_CASE("serialize round-trips and rejects malformed input") {
    const auto g = generate(ColorParams::make({0.8, 0.4}), 50, 3);
    const std::string text = serialize(g);
    CHECK(text.rfind("caperc-graph v1 n=50 k=2", 0) == 0);
    const auto h = deserialize(text);
    CHECK(h.n == g.n);
    CHECK(h.k == g.k);
    CHECK(h.layers == g.layers);
    CHECK(serialize(h) == text);

    CHECK_THROWS_AS(deserialize("bogus v1 n=2 k=1\n"), std::invalid_argument);
    CHECK_THROWS_AS(deserialize("caperc-graph v2 n=2 k=1\n"), std::invalid_argument);
    CHECK_THROWS_AS(deserialize("caperc-graph v1 n=2 k=1\nlayer 1 m=1\n0 0\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(deserialize("caperc-graph v1 n=2 k=1\nlayer 1 m=2\n0 1\n0 1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(deserialize("caperc-graph v1 n=2 k=1\nlayer 1 m=1\n0 5\n"), std::out_of_range);
    CHECK_THROWS_AS(deserialize("caperc-graph v1 n=2 k=1\nlayer 1 m=2\n0 1\n"),
                    std::invalid_argument);
}

TEST_CASE("sample_gnp_edges is deterministic and respects bounds") {
    const auto e1 = sample_gnp_edges(300, 0.9, 11);
    const auto e2 = sample_gnp_edges(300, 0.9, 11);
    CHECK(e1 == e2);
    CHECK_THROWS_AS(sample_gnp_edges(1, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_gnp_edges(4, 5.0, 1), std::invalid_argument);
}
