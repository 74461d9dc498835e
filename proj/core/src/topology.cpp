#include "rdsim/topology.hpp"

#include <algorithm>
#include <cmath>

#include "rdsim/errors.hpp"

namespace rdsim {

const char* to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::kHomophily: return "homophily";
    case TopologyKind::kInverseHomophily: return "inverse_homophily";
    case TopologyKind::kRichGetRicher: return "rich_get_richer";
  }
  return "?";
}

TopologyKind topology_from_string(const std::string& name) {
  if (name == "homophily") return TopologyKind::kHomophily;
  if (name == "inverse_homophily") return TopologyKind::kInverseHomophily;
  if (name == "rich_get_richer") return TopologyKind::kRichGetRicher;
  throw ConfigError("unknown topology '" + name +
                    "' (expected homophily, inverse_homophily or rich_get_richer)");
}

std::pair<double, double> sensitivity_range(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::kHomophily: return {0.2, 1.0};
    case TopologyKind::kInverseHomophily: return {0.8, 1.2};
    case TopologyKind::kRichGetRicher: return {0.1, 0.5};
  }
  return {0.0, 0.0};
}

double sensitivity_value(TopologyKind kind, int index, int steps) {
  if (steps < 1 || index < 1 || index > steps) {
    throw ConfigError("sensitivity index " + std::to_string(index) + " outside 1.." +
                      std::to_string(steps));
  }
  const auto [lo, hi] = sensitivity_range(kind);
  if (steps == 1) return 0.5 * (lo + hi);
  return lo + (hi - lo) * static_cast<double>(index - 1) / static_cast<double>(steps - 1);
}

double invlogit(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double edge_probability(const TopologyClass& topology, double x_i, double x_j,
                        std::size_t rank_i, std::size_t rank_j, std::size_t n) {
  switch (topology.kind) {
    case TopologyKind::kHomophily:
      return invlogit(-topology.sensitivity * social_distance(x_i, x_j));
    case TopologyKind::kInverseHomophily:
      return invlogit(topology.sensitivity * social_distance(x_i, x_j) - 20.0);
    case TopologyKind::kRichGetRicher: {
      const double p = topology.sensitivity / static_cast<double>(n) *
                       static_cast<double>(std::max(rank_i, rank_j));
      return std::clamp(p, 0.0, 1.0);
    }
  }
  return 0.0;
}

namespace {

template <class PairUniform>
Network generate_impl(const Population& pop, const TopologyClass& topology,
                      PairUniform&& pair_uniform) {
  if (pop.size() < 2) {
    throw ConfigError("network generation needs a population of at least 2");
  }
  if (!(topology.sensitivity > 0.0)) {
    throw ConfigError("topology sensitivity must be positive");
  }
  const std::size_t n = pop.size();
  const bool needs_ranks = topology.kind == TopologyKind::kRichGetRicher;
  std::vector<std::size_t> ranks;
  if (needs_ranks) ranks = compute_ranks(pop);

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(n * 4);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = edge_probability(topology, pop[i], pop[j], needs_ranks ? ranks[i] : 0,
                                        needs_ranks ? ranks[j] : 0, n);
      if (pair_uniform(i, j) < p) edges.emplace_back(i, j);
    }
  }
  return Network(n, edges);
}

}  // namespace

Network generate_network(const Population& pop, const TopologyClass& topology, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return generate_impl(pop, topology, [&](std::size_t, std::size_t) { return unit(rng); });
}

Network generate_network_with(
    const Population& pop, const TopologyClass& topology,
    const std::function<double(std::size_t, std::size_t)>& pair_uniform) {
  return generate_impl(pop, topology, pair_uniform);
}

std::vector<std::pair<double, std::size_t>> degree_quantity_profile(const Network& net,
                                                                    const Population& pop) {
  if (net.node_count() != pop.size()) {
    throw ConfigError("degree_quantity_profile: network and population sizes differ");
  }
  std::vector<std::pair<double, std::size_t>> profile(net.node_count());
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    profile[i] = {pop[i], net.degree(i)};
  }
  return profile;
}

}  // namespace rdsim
