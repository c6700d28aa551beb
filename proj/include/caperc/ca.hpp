#pragma once

#include <map>
#include <vector>

#include "caperc/graph.hpp"
#include "caperc/partition.hpp"

namespace caperc {

struct CAReport {
    Partition partition;                     // the CA-partition
    std::map<int, long long> histogram;      // size -> N_ell
    int max_size = 0;
    std::vector<Partition> avoided_partitions;  // components of G^1..G^k
};

// Components of G^i (union of all layers but i, so a multi-colored edge
// survives the avoidance through its other colors).
Partition components_avoiding(const ColoredMultigraph& g, int color);

// CA-partition = meet over all colors of components_avoiding.
CAReport ca_partition(const ColoredMultigraph& g);

// Independent brute-force check: per-pair BFS reachability in every
// avoided view. Guarded to n <= 16.
Partition ca_partition_oracle(const ColoredMultigraph& g);

}  // namespace caperc
