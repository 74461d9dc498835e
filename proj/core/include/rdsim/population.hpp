#pragma once

#include <cstddef>
#include <vector>

#include "rdsim/rng.hpp"

namespace rdsim {

/// The surveyed quantity, one value per node. Values are finite reals;
/// any size >= 2 is accepted.
struct Population {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }

  /// Realized mean of all values -- the estimand the samplers target.
  double mean() const;
};

/// Draws n i.i.d. Normal(mean, variance) quantities. Note the second moment
/// parameter is the variance, not the standard deviation.
Population generate_population(std::size_t n, double mean, double variance, Rng& rng);

/// Number of population values <= values[i], inclusive of the value itself,
/// so the result lies in [1, N]. Tied values share a rank. Direct count.
std::size_t rank(const Population& pop, std::size_t i);

/// rank() for every node at once; O(N log N).
std::vector<std::size_t> compute_ranks(const Population& pop);

}  // namespace rdsim
