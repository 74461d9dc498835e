#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rdsim/network.hpp"
#include "rdsim/population.hpp"
#include "rdsim/rng.hpp"

namespace rdsim {

enum class TopologyKind { kHomophily, kInverseHomophily, kRichGetRicher };

const char* to_string(TopologyKind kind);
TopologyKind topology_from_string(const std::string& name);

/// A topology class plus its sensitivity constant. The constant controls
/// how strongly edge probabilities respond to the quantity values.
struct TopologyClass {
  TopologyKind kind = TopologyKind::kHomophily;
  double sensitivity = 0.5;
};

/// Sensitivity range networks are swept over per class: (0.2, 1) for
/// homophily, (0.1, 0.5) for rich-get-richer, (0.8, 1.2) for inverse
/// homophily. Values in these ranges give graphs that are connected but
/// not extremely dense; the library accepts any positive value.
std::pair<double, double> sensitivity_range(TopologyKind kind);

/// The `index`-th (1-based) of `steps` equidistant sensitivity values
/// spanning the class range, endpoints included.
double sensitivity_value(TopologyKind kind, int index, int steps);

/// Logistic function 1 / (1 + exp(-z)).
double invlogit(double z);

/// Pairwise social distance: absolute difference of the quantities.
inline double social_distance(double x_i, double x_j) {
  return x_i >= x_j ? x_i - x_j : x_j - x_i;
}

/// Edge probability for the pair (i, j), always in [0, 1]:
///   homophily          invlogit(-a * d)        decreasing in distance
///   inverse homophily  invlogit(c * d - 20)    increasing in distance
///   rich-get-richer    (b / n) * max(rank_i, rank_j), clamped to 1
double edge_probability(const TopologyClass& topology, double x_i, double x_j,
                        std::size_t rank_i, std::size_t rank_j, std::size_t n);

/// Bernoulli draw per unordered pair, iterated lexicographically (i < j)
/// so a (population, topology, stream) triple is bit-reproducible.
Network generate_network(const Population& pop, const TopologyClass& topology, Rng& rng);

/// As generate_network, but the pair uniforms come from a caller-supplied
/// source instead of the stream. Exposed for relabeling-exchangeability
/// checks; the simulation paths all use the stream overload.
Network generate_network_with(const Population& pop, const TopologyClass& topology,
                              const std::function<double(std::size_t, std::size_t)>& pair_uniform);

/// Per-node (quantity, degree) pairs, in node order.
std::vector<std::pair<double, std::size_t>> degree_quantity_profile(const Network& net,
                                                                    const Population& pop);

}  // namespace rdsim
