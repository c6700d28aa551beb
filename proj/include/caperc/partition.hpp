#pragma once

#include <map>
#include <string>
#include <vector>

namespace caperc {

// Partition of [0, n) into blocks. label(v) is the canonical block
// representative, the minimum element of the block.
class Partition {
  public:
    Partition() = default;
    static Partition singletons(int n);

    // Canonicalizes arbitrary block identifiers to min-element reps.
    static Partition from_labels(const std::vector<int>& raw);

    int n() const { return static_cast<int>(label_.size()); }
    int label(int v) const { return label_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& labels() const { return label_; }

    int block_count() const;
    std::vector<int> block_of(int rep) const;

    bool operator==(const Partition& other) const { return label_ == other.label_; }

  private:
    std::vector<int> label_;
};

// Incremental connected components, union by size with path halving.
class UnionFind {
  public:
    explicit UnionFind(int n);
    int find(int x);
    void unite(int x, int y);
    // Converts to a canonical Partition (min-element representatives).
    Partition to_partition();

  private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

// Coarsest common refinement: v, w share a block iff they do in both p
// and q. Groups on the label pair, rep = minimum element.
Partition meet(const Partition& p, const Partition& q);

// N_ell = number of blocks of size exactly ell; sum ell*N_ell = n.
std::map<int, long long> size_census(const Partition& p);

// "block <rep>: v1 v2 ..." lines sorted by representative.
std::string dump(const Partition& p);

}  // namespace caperc
