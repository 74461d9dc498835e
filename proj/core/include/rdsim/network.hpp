#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace rdsim {

/// Undirected simple graph in CSR form. Neighbor lists are sorted
/// ascending, there are no self-loops and no duplicate edges, and
/// {i,j} present implies {j,i} present.
class Network {
 public:
  /// Builds from an unordered-pair edge list; validates simplicity.
  Network(std::size_t node_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  std::size_t degree(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }

  std::span<const std::size_t> neighbors(std::size_t i) const {
    return {neighbors_.data() + offsets_[i], neighbors_.data() + offsets_[i + 1]};
  }

  /// Index of node i's first adjacency slot in the flat neighbor array.
  /// Lets callers keep per-directed-edge side tables aligned with CSR.
  std::size_t adjacency_offset(std::size_t i) const { return offsets_[i]; }
  std::size_t adjacency_size() const { return neighbors_.size(); }

  bool has_edge(std::size_t i, std::size_t j) const;

  /// Visits each undirected edge once as (i, j) with i < j, ascending.
  template <class Fn>
  void for_each_edge(Fn&& fn) const {
    for (std::size_t i = 0; i < node_count_; ++i) {
      for (std::size_t j : neighbors(i)) {
        if (j > i) fn(i, j);
      }
    }
  }

 private:
  std::size_t node_count_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> neighbors_;
};

}  // namespace rdsim
