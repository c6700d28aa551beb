#include "caperc/partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace caperc {

Partition Partition::singletons(int n) {
    Partition p;
    p.label_.resize(static_cast<std::size_t>(n));
    std::iota(p.label_.begin(), p.label_.end(), 0);
    return p;
}

Partition Partition::from_labels(const std::vector<int>& raw) {
    Partition p;
    p.label_.assign(raw.size(), -1);
    std::unordered_map<int, int> rep;  // raw id -> min element
    rep.reserve(raw.size());
    for (std::size_t v = 0; v < raw.size(); ++v) {
        auto [it, fresh] = rep.try_emplace(raw[v], static_cast<int>(v));
        p.label_[v] = it->second;
    }
    return p;
}

int Partition::block_count() const {
    int c = 0;
    for (std::size_t v = 0; v < label_.size(); ++v)
        if (label_[v] == static_cast<int>(v)) ++c;
    return c;
}

std::vector<int> Partition::block_of(int rep) const {
    std::vector<int> out;
    for (std::size_t v = 0; v < label_.size(); ++v)
        if (label_[v] == rep) out.push_back(static_cast<int>(v));
    return out;
}

UnionFind::UnionFind(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
}

int UnionFind::find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
        parent_[static_cast<std::size_t>(x)] =
            parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
        x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
}

void UnionFind::unite(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return;
    if (size_[static_cast<std::size_t>(rx)] < size_[static_cast<std::size_t>(ry)]) std::swap(rx, ry);
    parent_[static_cast<std::size_t>(ry)] = rx;
    size_[static_cast<std::size_t>(rx)] += size_[static_cast<std::size_t>(ry)];
}

Partition UnionFind::to_partition() {
    std::vector<int> raw(parent_.size());
    for (std::size_t v = 0; v < parent_.size(); ++v) raw[v] = find(static_cast<int>(v));
    return Partition::from_labels(raw);
}

Partition meet(const Partition& p, const Partition& q) {
    if (p.n() != q.n()) throw std::invalid_argument("meet: size mismatch");
    std::vector<int> out(static_cast<std::size_t>(p.n()));
    std::unordered_map<std::uint64_t, int> rep;
    rep.reserve(out.size());
    for (int v = 0; v < p.n(); ++v) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(p.label(v)) << 32) | static_cast<std::uint32_t>(q.label(v));
        auto [it, fresh] = rep.try_emplace(key, v);  // first (= minimal) element wins
        out[static_cast<std::size_t>(v)] = it->second;
    }
    Partition r;
    r = Partition::from_labels(out);
    return r;
}

std::map<int, long long> size_census(const Partition& p) {
    std::unordered_map<int, int> size;
    size.reserve(static_cast<std::size_t>(p.n()));
    for (int v = 0; v < p.n(); ++v) ++size[p.label(v)];
    std::map<int, long long> census;
    for (const auto& [rep, s] : size) ++census[s];
    return census;
}

std::string dump(const Partition& p) {
    std::map<int, std::vector<int>> blocks;
    for (int v = 0; v < p.n(); ++v) blocks[p.label(v)].push_back(v);
    std::ostringstream out;
    for (const auto& [rep, vs] : blocks) {
        out << "block " << rep << ":";
        for (int v : vs) out << " " << v;
        out << "\n";
    }
    return out.str();
}

}  // namespace caperc
