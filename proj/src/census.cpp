#include "caperc/census.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "caperc/ca.hpp"
#include "caperc/partition.hpp"

namespace caperc {

namespace {

std::uint64_t pair_key(int u, int v) {
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

// pair -> set of layers containing it
std::unordered_map<std::uint64_t, ColorMask> collapse(const ColoredMultigraph& g) {
    std::unordered_map<std::uint64_t, ColorMask> masks;
    masks.reserve(static_cast<std::size_t>(g.edge_count()));
    for (int i = 0; i < g.k; ++i)
        for (const auto& [u, v] : g.layers[static_cast<std::size_t>(i)])
            masks[pair_key(u, v)] |= (ColorMask{1} << i);
    return masks;
}

struct Collapsed {
    std::unordered_map<std::uint64_t, ColorMask> masks;
    std::vector<std::vector<int>> adj;
};

Collapsed collapsed_graph(const ColoredMultigraph& g) {
    Collapsed c;
    c.masks = collapse(g);
    c.adj.resize(static_cast<std::size_t>(g.n));
    for (const auto& [key, mask] : c.masks) {
        const int u = static_cast<int>(key >> 32);
        const int v = static_cast<int>(key & 0xffffffffULL);
        c.adj[static_cast<std::size_t>(u)].push_back(v);
        c.adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nb : c.adj) std::sort(nb.begin(), nb.end());
    return c;
}

// Vertices surviving iterated removal of degree-<=1 vertices. All simple
// cycles live here.
std::vector<char> two_core(const std::vector<std::vector<int>>& adj) {
    const std::size_t n = adj.size();
    std::vector<int> deg(n);
    std::vector<char> alive(n, 1);
    std::vector<int> stack;
    for (std::size_t v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(adj[v].size());
        if (deg[v] <= 1) stack.push_back(static_cast<int>(v));
    }
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (!alive[static_cast<std::size_t>(v)]) continue;
        alive[static_cast<std::size_t>(v)] = 0;
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (!alive[static_cast<std::size_t>(w)]) continue;
            if (--deg[static_cast<std::size_t>(w)] <= 1) stack.push_back(w);
        }
    }
    return alive;
}

void attach_colors(CycleRecord& rec, const std::unordered_map<std::uint64_t, ColorMask>& masks) {
    rec.length = static_cast<int>(rec.vertices.size());
    rec.edge_color_sets.clear();
    rec.edge_color_sets.reserve(static_cast<std::size_t>(rec.length));
    for (int j = 0; j < rec.length; ++j) {
        int u = rec.vertices[static_cast<std::size_t>(j)];
        int v = rec.vertices[static_cast<std::size_t>((j + 1) % rec.length)];
        if (u > v) std::swap(u, v);
        rec.edge_color_sets.push_back(masks.at(pair_key(u, v)));
    }
    rec.max_parts = max_separation(rec.edge_color_sets);
}

// All simple cycles of length <= max_len whose minimal vertex is s,
// traversed with second vertex < last vertex to kill the reflection.
void cycles_from(int s, const std::vector<std::vector<int>>& adj, const std::vector<char>& in_core,
                 int max_len, std::vector<int>& path, std::vector<char>& on_path,
                 std::vector<CycleRecord>& out) {
    const int cur = path.back();
    for (int w : adj[static_cast<std::size_t>(cur)]) {
        if (w == s && path.size() >= 3 && path[1] < path.back()) {
            CycleRecord rec;
            rec.vertices = path;
            out.push_back(std::move(rec));
            continue;
        }
        if (w <= s || !in_core[static_cast<std::size_t>(w)]) continue;
        if (on_path[static_cast<std::size_t>(w)]) continue;
        if (static_cast<int>(path.size()) >= max_len) continue;
        path.push_back(w);
        on_path[static_cast<std::size_t>(w)] = 1;
        cycles_from(s, adj, in_core, max_len, path, on_path, out);
        on_path[static_cast<std::size_t>(w)] = 0;
        path.pop_back();
    }
}

}  // namespace

std::vector<RepeatedEdge> repeated_edges(const ColoredMultigraph& g) {
    std::vector<RepeatedEdge> out;
    for (const auto& [key, mask] : collapse(g)) {
        if (std::popcount(mask) < 2) continue;
        RepeatedEdge e;
        e.pair = {static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffULL)};
        e.colors = mask;
        out.push_back(e);
    }
    std::sort(out.begin(), out.end(),
              [](const RepeatedEdge& a, const RepeatedEdge& b) { return a.pair < b.pair; });
    return out;
}

std::vector<CycleRecord> enumerate_cycles(const ColoredMultigraph& g, int max_len) {
    if (max_len < 3 || max_len > 24) throw std::invalid_argument("enumerate_cycles: max_len in [3,24]");
    const Collapsed c = collapsed_graph(g);
    const std::vector<char> core = two_core(c.adj);

    std::vector<CycleRecord> out;
    std::vector<int> path;
    std::vector<char> on_path(static_cast<std::size_t>(g.n), 0);
    for (int s = 0; s < g.n; ++s) {
        if (!core[static_cast<std::size_t>(s)]) continue;
        path.assign(1, s);
        on_path[static_cast<std::size_t>(s)] = 1;
        cycles_from(s, c.adj, core, max_len, path, on_path, out);
        on_path[static_cast<std::size_t>(s)] = 0;
    }
    for (auto& rec : out) attach_colors(rec, c.masks);
    std::sort(out.begin(), out.end(),
              [](const CycleRecord& a, const CycleRecord& b) { return a.vertices < b.vertices; });
    return out;
}

int max_separation(const std::vector<ColorMask>& edge_color_sets) {
    const int len = static_cast<int>(edge_color_sets.size());
    ColorMask all = 0;
    for (ColorMask m : edge_color_sets) {
        if (m == 0) throw std::invalid_argument("max_separation: empty color set");
        all |= m;
    }
    const int bound = std::min(len, std::popcount(all));

    // Cuts c0 < c1 < ... < c_{ell-1}; arc j spans [c_j, c_{j+1}) cyclically.
    // Depth-first over cut positions with incremental disjointness pruning.
    std::vector<int> cuts;
    auto arc_union = [&](int from, int to) {  // [from, to) cyclic, to > from allowed up to from+len
        ColorMask m = 0;
        for (int j = from; j < to; ++j) m |= edge_color_sets[static_cast<std::size_t>(j % len)];
        return m;
    };
    std::function<bool(int, int, ColorMask)> place = [&](int ell, int next_min, ColorMask used) -> bool {
        const int placed = static_cast<int>(cuts.size());
        if (placed == ell) {
            const ColorMask last = arc_union(cuts.back(), cuts.front() + len);
            return (last & used) == 0;
        }
        for (int c = next_min; c <= len - ell + placed; ++c) {
            if (placed > 0) {
                const ColorMask arc = arc_union(cuts.back(), c);
                if ((arc & used) != 0) continue;
                cuts.push_back(c);
                if (place(ell, c + 1, used | arc)) return true;
                cuts.pop_back();
            } else {
                cuts.push_back(c);
                if (place(ell, c + 1, used)) return true;
                cuts.pop_back();
            }
        }
        return false;
    };

    for (int ell = bound; ell >= 2; --ell) {
        cuts.clear();
        if (place(ell, 0, 0)) return ell;
    }
    return 1;
}

std::vector<ComponentRecord> excess_census(const ColoredMultigraph& g) {
    const auto masks = collapse(g);
    UnionFind uf(g.n);
    for (const auto& [key, mask] : masks)
        uf.unite(static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffULL));

    std::unordered_map<int, ComponentRecord> comps;
    for (const auto& [key, mask] : masks) {
        const int u = static_cast<int>(key >> 32);
        auto& rec = comps[uf.find(u)];
        ++rec.edge_count;
        if (std::popcount(mask) >= 2) ++rec.repeated_edges;
    }
    for (int v = 0; v < g.n; ++v) {
        auto it = comps.find(uf.find(v));
        if (it != comps.end()) ++it->second.size;
    }
    std::vector<ComponentRecord> out;
    out.reserve(comps.size());
    for (auto& [root, rec] : comps) {
        rec.excess = rec.edge_count - rec.size + 1;
        rec.flagged = rec.excess >= 2 || (rec.excess >= 1 && rec.repeated_edges >= 1) ||
                      rec.repeated_edges >= 2;
        if (rec.flagged) {
            for (int v = 0; v < g.n; ++v)
                if (uf.find(v) == root) rec.vertices.push_back(v);
        }
        out.push_back(std::move(rec));
    }
    std::sort(out.begin(), out.end(), [](const ComponentRecord& a, const ComponentRecord& b) {
        if (a.size != b.size) return a.size > b.size;
        return a.edge_count > b.edge_count;
    });
    return out;
}

CensusResult census(const ColoredMultigraph& g, int max_len) {
    CensusResult result;
    result.c2 = static_cast<long long>(repeated_edges(g).size());
    for (const auto& rec : enumerate_cycles(g, max_len)) {
        ++result.cm[rec.length];
        if (rec.max_parts >= 2) ++result.y[rec.max_parts];
    }
    for (auto& rec : excess_census(g))
        if (rec.flagged) result.flags.push_back(std::move(rec));
    return result;
}

SupportClass classify_ca_support(const ColoredMultigraph& g, const std::vector<int>& block,
                                 const CAReport* report) {
    if (block.empty()) throw std::invalid_argument("classify_ca_support: empty block");
    CAReport local;
    if (report == nullptr) {
        local = ca_partition(g);
        report = &local;
    }
    const int rep = report->partition.label(block.front());
    std::vector<int> expected = report->partition.block_of(rep);
    std::vector<int> sorted_block = block;
    std::sort(sorted_block.begin(), sorted_block.end());
    if (sorted_block != expected) throw std::invalid_argument("classify_ca_support: not a CA-block");

    SupportClass cls;
    if (block.size() == 1) {
        cls.kind = SupportKind::SingleVertex;
        return cls;
    }

    const Collapsed c = collapsed_graph(g);
    // containing component of G
    std::vector<int> comp;
    {
        std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
        std::vector<int> stack{block.front()};
        seen[static_cast<std::size_t>(block.front())] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : c.adj[static_cast<std::size_t>(v)]) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    long long edges = 0;
    for (int v : comp) edges += static_cast<long long>(c.adj[static_cast<std::size_t>(v)].size());
    edges /= 2;
    const long long excess = edges - static_cast<long long>(comp.size()) + 1;

    if (block.size() == 2) {
        int u = block[0], v = block[1];
        if (u > v) std::swap(u, v);
        auto it = c.masks.find(pair_key(u, v));
        if (it != c.masks.end() && std::popcount(it->second) >= 2 && excess == 0) {
            cls.kind = SupportKind::SingleEdge;
            return cls;
        }
    }

    if (excess == 1) {
        // The 2-core of a unicyclic component is exactly its cycle.
        const std::vector<char> core = two_core(c.adj);
        std::vector<int> cycle_vertices;
        for (int v : comp)
            if (core[static_cast<std::size_t>(v)]) cycle_vertices.push_back(v);
        const bool on_cycle = std::all_of(block.begin(), block.end(), [&](int v) {
            return core[static_cast<std::size_t>(v)];
        });
        if (on_cycle && !cycle_vertices.empty()) {
            // walk the cycle in canonical order
            const int start = *std::min_element(cycle_vertices.begin(), cycle_vertices.end());
            std::vector<int> order{start};
            int prev = -1, cur = start;
            do {
                int next = -1;
                for (int w : c.adj[static_cast<std::size_t>(cur)]) {
                    if (!core[static_cast<std::size_t>(w)] || w == prev) continue;
                    next = w;
                    break;
                }
                if (next == -1) break;
                prev = cur;
                cur = next;
                if (cur != start) order.push_back(cur);
            } while (cur != start);
            if (order.size() == cycle_vertices.size()) {
                // canonical direction: second vertex smaller than last
                if (order.size() >= 3 && order[1] > order.back())
                    std::reverse(order.begin() + 1, order.end());
                CycleRecord rec;
                rec.vertices = std::move(order);
                attach_colors(rec, c.masks);
                if (rec.max_parts == static_cast<int>(block.size())) {
                    cls.kind = SupportKind::Cycle;
                    cls.cycle = std::move(rec);
                    return cls;
                }
            }
        }
    }
    cls.kind = SupportKind::Other;
    return cls;
}

}  // namespace caperc
