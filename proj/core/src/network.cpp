#include "rdsim/network.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "rdsim/errors.hpp"

namespace rdsim {

Network::Network(std::size_t node_count,
                 const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : node_count_(node_count), offsets_(node_count + 1, 0) {
  for (const auto& [i, j] : edges) {
    if (i == j) {
      throw ConfigError("self-loop on node " + std::to_string(i));
    }
    if (i >= node_count || j >= node_count) {
      throw ConfigError("edge endpoint out of range: {" + std::to_string(i) + "," +
                        std::to_string(j) + "}");
    }
    ++offsets_[i + 1];
    ++offsets_[j + 1];
  }
  for (std::size_t i = 0; i < node_count; ++i) offsets_[i + 1] += offsets_[i];

  neighbors_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [i, j] : edges) {
    neighbors_[cursor[i]++] = j;
    neighbors_[cursor[j]++] = i;
  }
  for (std::size_t i = 0; i < node_count; ++i) {
    auto begin = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
    auto end = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
    std::sort(begin, end);
    if (std::adjacent_find(begin, end) != end) {
      throw ConfigError("duplicate edge incident to node " + std::to_string(i));
    }
  }
}

bool Network::has_edge(std::size_t i, std::size_t j) const {
  if (i >= node_count_ || j >= node_count_) return false;
  auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

}  // namespace rdsim
