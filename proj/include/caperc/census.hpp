#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "caperc/graph.hpp"

namespace caperc {

using ColorMask = std::uint32_t;  // bit i set = present in layer i

// Simple cycle of the collapsed graph. Canonical form: minimal vertex
// first, then the smaller of its two cycle neighbors.
struct CycleRecord {
    std::vector<int> vertices;
    int length = 0;
    std::vector<ColorMask> edge_color_sets;  // per edge (v[j], v[j+1 mod len])
    int max_parts = 1;
};

struct RepeatedEdge {
    Edge pair;
    ColorMask colors = 0;
};

struct ComponentRecord {
    int size = 0;
    long long edge_count = 0;   // collapsed simple edges
    long long excess = 0;       // edges - vertices + 1
    int repeated_edges = 0;
    bool flagged = false;
    std::vector<int> vertices;  // populated only for flagged components
};

struct CensusResult {
    long long c2 = 0;                       // repeated-edge count
    std::map<int, long long> cm;            // length -> cycle count C_m
    std::map<int, long long> y;             // parts -> separated-cycle count Y_ell (ell >= 2)
    std::vector<ComponentRecord> flags;     // components violating the
                                            // one-cycle / one-repeated-edge structure
};

enum class SupportKind { SingleVertex, SingleEdge, Cycle, Other };

struct SupportClass {
    SupportKind kind = SupportKind::Other;
    CycleRecord cycle;  // populated when kind == Cycle
};

std::vector<RepeatedEdge> repeated_edges(const ColoredMultigraph& g);

// Every simple cycle of length in [3, max_len] of the collapsed graph,
// once, in canonical form, sorted. max_len in [3, 24].
std::vector<CycleRecord> enumerate_cycles(const ColoredMultigraph& g, int max_len);

// Largest ell such that the cyclic edge sequence divides into ell
// consecutive nonempty arcs whose color-set unions are pairwise
// disjoint. Exhaustive over cut positions.
int max_separation(const std::vector<ColorMask>& edge_color_sets);

CensusResult census(const ColoredMultigraph& g, int max_len);

// Per-component size/edge/excess records (isolated vertices omitted);
// flags excess >= 2, or excess >= 1 with a repeated edge, or >= 2
// repeated edges.
std::vector<ComponentRecord> excess_census(const ColoredMultigraph& g);

// Structural classification of a CA-block per the subcritical support
// characterization. Blocks that fit no case are reported Other, never
// reclassified. Pass the graph's CAReport when available to skip the
// internal recomputation used to validate the block.
struct CAReport;
SupportClass classify_ca_support(const ColoredMultigraph& g, const std::vector<int>& block,
                                 const CAReport* report = nullptr);

}  // namespace caperc
