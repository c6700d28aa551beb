#include "caperc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "caperc/rng.hpp"

namespace caperc {

namespace {
constexpr std::uint64_t kLayerSalt = 0x6c61796572ULL;  // "layer"

std::uint64_t pair_key(int u, int v) {
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}
}  // namespace

long long ColoredMultigraph::edge_count() const {
    long long m = 0;
    for (const auto& layer : layers) m += static_cast<long long>(layer.size());
    return m;
}

GraphView::GraphView(const ColoredMultigraph& g, ViewMode mode, std::vector<int> colors)
    : g_(&g), selected_(static_cast<std::size_t>(g.k), mode == ViewMode::All ? 1 : 0) {
    for (int c : colors) {
        if (c < 0 || c >= g.k) throw std::out_of_range("GraphView: color index out of range");
        selected_[static_cast<std::size_t>(c)] = 1;
    }
    if (mode == ViewMode::Avoid)
        for (auto& s : selected_) s = !s;
}

void GraphView::for_each_edge(const std::function<void(int, int)>& fn) const {
    for (int i = 0; i < g_->k; ++i) {
        if (!selected_[static_cast<std::size_t>(i)]) continue;
        for (const auto& [u, v] : g_->layers[static_cast<std::size_t>(i)]) fn(u, v);
    }
}

std::vector<Edge> GraphView::edges() const {
    std::vector<Edge> out;
    for_each_edge([&](int u, int v) { out.emplace_back(u, v); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Edge> sample_gnp_edges(int n, double lambda, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("sample_gnp_edges: n must be >= 2");
    if (lambda > n) throw std::invalid_argument("sample_gnp_edges: lambda > n gives p > 1");
    rng::Engine eng(seed);
    const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
    std::binomial_distribution<long long> count(pairs, lambda / n);
    const long long m = count(eng);

    std::uniform_int_distribution<int> pick(0, n - 1);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(2 * m));
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    while (static_cast<long long>(edges.size()) < m) {
        int u = pick(eng), v = pick(eng);
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (!seen.insert(pair_key(u, v)).second) continue;
        edges.emplace_back(u, v);
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

ColoredMultigraph generate(const ColorParams& params, int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("generate: n must be >= 2");
    ColoredMultigraph g;
    g.n = n;
    g.k = params.k;
    g.layers.resize(static_cast<std::size_t>(params.k));
    for (int i = 0; i < params.k; ++i)
        g.layers[static_cast<std::size_t>(i)] =
            sample_gnp_edges(n, params.lambdas[static_cast<std::size_t>(i)],
                             rng::derive(seed, kLayerSalt, static_cast<std::uint64_t>(i)));
    return g;
}

ColoredMultigraph figure1_gadget(int ell, bool closing_edge) {
    if (ell < 1) throw std::invalid_argument("figure1_gadget: ell must be >= 1");
    const int path_len = 2 * ell + 1;            // edges per path
    const int row = path_len + 1;                // vertices per path
    ColoredMultigraph g;
    g.n = 2 * row;
    g.k = 3;
    g.layers.resize(3);
    auto top = [&](int i) { return i; };
    auto bot = [&](int i) { return row + i; };
    for (int j = 0; j < path_len; ++j) {
        const int color = (j % 2 == 0) ? 0 : 1;  // 1st, 3rd, ... edge blue
        g.layers[static_cast<std::size_t>(color)].emplace_back(top(j), top(j + 1));
        g.layers[static_cast<std::size_t>(color)].emplace_back(bot(j), bot(j + 1));
    }
    for (int i = 0; i < path_len; ++i)           // rungs on the first 2*ell+1 pairs
        g.layers[2].emplace_back(top(i), bot(i));
    if (closing_edge) g.layers[0].emplace_back(top(path_len), bot(path_len));
    for (auto& layer : g.layers) std::sort(layer.begin(), layer.end());
    return g;
}

std::string serialize(const ColoredMultigraph& g) {
    std::ostringstream out;
    out << "caperc-graph v1 n=" << g.n << " k=" << g.k << "\n";
    for (int i = 0; i < g.k; ++i) {
        const auto& layer = g.layers[static_cast<std::size_t>(i)];
        out << "layer " << (i + 1) << " m=" << layer.size() << "\n";
        for (const auto& [u, v] : layer) out << u << " " << v << "\n";
    }
    return out.str();
}

ColoredMultigraph deserialize(const std::string& text) {
    std::istringstream in(text);
    std::string word, version;
    int n = 0, k = 0;
    in >> word >> version;
    std::string nfield, kfield;
    in >> nfield >> kfield;
    if (word != "caperc-graph" || version != "v1" || nfield.rfind("n=", 0) != 0 ||
        kfield.rfind("k=", 0) != 0)
        throw std::invalid_argument("deserialize: malformed header");
    n = std::stoi(nfield.substr(2));
    k = std::stoi(kfield.substr(2));
    if (n < 0 || k < 1) throw std::invalid_argument("deserialize: malformed header");

    ColoredMultigraph g;
    g.n = n;
    g.k = k;
    g.layers.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        int idx = 0;
        std::string mfield;
        if (!(in >> word >> idx >> mfield) || word != "layer" || idx != i + 1 ||
            mfield.rfind("m=", 0) != 0)
            throw std::invalid_argument("deserialize: malformed layer header");
        const long long m = std::stoll(mfield.substr(2));
        auto& layer = g.layers[static_cast<std::size_t>(i)];
        layer.reserve(static_cast<std::size_t>(m));
        std::unordered_set<std::uint64_t> seen;
        for (long long e = 0; e < m; ++e) {
            int u = 0, v = 0;
            if (!(in >> u >> v)) throw std::invalid_argument("deserialize: truncated edge list");
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw std::out_of_range("deserialize: vertex out of range");
            if (u == v) throw std::invalid_argument("deserialize: self-loop");
            if (u > v) std::swap(u, v);
            if (!seen.insert(pair_key(u, v)).second)
                throw std::invalid_argument("deserialize: duplicate edge within layer");
            layer.emplace_back(u, v);
        }
        std::sort(layer.begin(), layer.end());
    }
    return g;
}

}  // namespace caperc
