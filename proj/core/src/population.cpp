#include "rdsim/population.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rdsim/errors.hpp"

namespace rdsim {

double Population::mean() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

Population generate_population(std::size_t n, double mean, double variance, Rng& rng) {
  if (n < 2) {
    throw ConfigError("population size must be at least 2, got " + std::to_string(n));
  }
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw ConfigError("population variance must be positive and finite");
  }
  std::normal_distribution<double> normal(mean, std::sqrt(variance));
  Population pop;
  pop.values.resize(n);
  for (double& v : pop.values) v = normal(rng);
  return pop;
}

std::size_t rank(const Population& pop, std::size_t i) {
  if (i >= pop.size()) {
    throw std::out_of_range("rank: node index " + std::to_string(i) + " out of range");
  }
  const double x = pop.values[i];
  std::size_t count = 0;
  for (double v : pop.values) {
    if (v <= x) ++count;
  }
  return count;
}

std::vector<std::size_t> compute_ranks(const Population& pop) {
  std::vector<double> sorted(pop.values);
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> ranks(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    ranks[i] = static_cast<std::size_t>(
        std::upper_bound(sorted.begin(), sorted.end(), pop.values[i]) - sorted.begin());
  }
  return ranks;
}

}  // namespace rdsim
