#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "caperc/color_params.hpp"

namespace caperc {

using Edge = std::pair<int, int>;  // u < v

// n vertices and k edge layers. Within a layer edges are distinct,
// loop-free, stored sorted lexicographically with u < v. The same pair
// may appear in several layers (a repeated edge). Immutable once built.
struct ColoredMultigraph {
    int n = 0;
    int k = 0;
    std::vector<std::vector<Edge>> layers;

    long long edge_count() const;
};

enum class ViewMode { All, Avoid, Only };

// Lightweight view of the simple graph formed by the union of a subset
// of layers. Holds a reference; no layer data is copied.
class GraphView {
  public:
    GraphView(const ColoredMultigraph& g, ViewMode mode, std::vector<int> colors = {});

    // Visits every edge of every selected layer; a multi-colored pair is
    // visited once per selected layer it belongs to.
    void for_each_edge(const std::function<void(int, int)>& fn) const;

    // Union of the selected layers with multiplicity collapsed, sorted.
    std::vector<Edge> edges() const;

    const ColoredMultigraph& graph() const { return *g_; }
    bool uses_layer(int i) const { return selected_[static_cast<std::size_t>(i)]; }

  private:
    const ColoredMultigraph* g_;
    std::vector<char> selected_;
};

// One layer per color, each an exact G(n, lambda_i/n) sample: the edge
// count is Binomial(n(n-1)/2, lambda_i/n) and, given the count, the edge
// set is uniform. Layers are independent; layer i uses the child stream
// derive(seed, layer_salt, i), so output is a pure function of
// (params, n, seed) whatever the thread count.
ColoredMultigraph generate(const ColorParams& params, int n, std::uint64_t seed);

// One exact G(n, lambda/n) edge sample (count-then-uniform-set), used by
// generate for each layer and by the single-layer experiment runners.
std::vector<Edge> sample_gnp_edges(int n, double lambda, std::uint64_t seed);

// Ladder fixture: two parallel paths of length 2*ell+1 (blue = color 0
// on odd path edges, red = color 1 on even ones), green (color 2) rungs
// joining the first 2*ell+1 vertex pairs. closing_edge adds one blue
// edge between the two terminal vertices.
ColoredMultigraph figure1_gadget(int ell, bool closing_edge);

// Text format: "caperc-graph v1 n=<n> k=<k>", then per layer
// "layer <i> m=<count>" (1-based i) followed by "<u> <v>" pairs
// (0-based, u < v, lexicographic). Round-trips bit-exactly.
std::string serialize(const ColoredMultigraph& g);
ColoredMultigraph deserialize(const std::string& text);

}  // namespace caperc
