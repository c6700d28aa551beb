#include "caperc/ca.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace caperc {

Partition components_avoiding(const ColoredMultigraph& g, int color) {
    if (color < 0 || color >= g.k) throw std::out_of_range("components_avoiding: color out of range");
    UnionFind uf(g.n);
    GraphView view(g, ViewMode::Avoid, {color});
    view.for_each_edge([&](int u, int v) { uf.unite(u, v); });
    return uf.to_partition();
}

CAReport ca_partition(const ColoredMultigraph& g) {
    CAReport report;
    report.avoided_partitions.reserve(static_cast<std::size_t>(g.k));
    for (int i = 0; i < g.k; ++i) report.avoided_partitions.push_back(components_avoiding(g, i));
    Partition acc = report.avoided_partitions.front();
    for (int i = 1; i < g.k; ++i) acc = meet(acc, report.avoided_partitions[static_cast<std::size_t>(i)]);
    report.partition = std::move(acc);
    report.histogram = size_census(report.partition);
    report.max_size = report.histogram.empty() ? 0 : report.histogram.rbegin()->first;
    return report;
}

namespace {

std::vector<std::vector<int>> adjacency(const GraphView& view, int n) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& [u, v] : view.edges()) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    return adj;
}

bool reachable(const std::vector<std::vector<int>>& adj, int from, int to) {
    if (from == to) return true;
    std::vector<char> seen(adj.size(), 0);
    std::queue<int> q;
    q.push(from);
    seen[static_cast<std::size_t>(from)] = 1;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int w : adj[static_cast<std::size_t>(u)]) {
            if (w == to) return true;
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                q.push(w);
            }
        }
    }
    return false;
}

}  // namespace

Partition ca_partition_oracle(const ColoredMultigraph& g) {
    if (g.n > 16) throw std::invalid_argument("ca_partition_oracle: n must be <= 16");
    std::vector<std::vector<std::vector<int>>> avoided;
    avoided.reserve(static_cast<std::size_t>(g.k));
    for (int i = 0; i < g.k; ++i) avoided.push_back(adjacency(GraphView(g, ViewMode::Avoid, {i}), g.n));

    std::vector<int> raw(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) raw[static_cast<std::size_t>(v)] = v;
    for (int u = 0; u < g.n; ++u) {
        for (int v = u + 1; v < g.n; ++v) {
            bool ca = true;
            for (int i = 0; i < g.k && ca; ++i) ca = reachable(avoided[static_cast<std::size_t>(i)], u, v);
            if (ca && raw[static_cast<std::size_t>(v)] > raw[static_cast<std::size_t>(u)])
                raw[static_cast<std::size_t>(v)] = raw[static_cast<std::size_t>(u)];
        }
    }
    // raw labels may not yet be transitive-closed downward; chase to fixpoint
    for (int v = 0; v < g.n; ++v) {
        int r = v;
        while (raw[static_cast<std::size_t>(r)] != r) r = raw[static_cast<std::size_t>(r)];
        raw[static_cast<std::size_t>(v)] = r;
    }
    return Partition::from_labels(raw);
}

}  // namespace caperc
