#include "rdsim/estimators.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "rdsim/errors.hpp"

namespace rdsim {

namespace {

/// Shared accumulation for all three estimators: a self-normalized
/// weighted mean with weights D^-alpha. Keeping one arithmetic path makes
/// the endpoint identities exact rather than approximate.
double weighted_mean_inv_pow(std::span<const double> quantities,
                             std::span<const int> reported_degrees, double alpha) {
  if (quantities.empty()) {
    throw ConfigError("estimator input must be non-empty");
  }
  if (quantities.size() != reported_degrees.size()) {
    throw ConfigError("estimator input lengths differ");
  }
  double weight_sum = 0.0;
  double weighted_quantity_sum = 0.0;
  for (std::size_t i = 0; i < quantities.size(); ++i) {
    const int degree = reported_degrees[i];
    if (degree < 1) {
      throw ConfigError("reported degree must be >= 1, got " + std::to_string(degree) +
                        " at record " + std::to_string(i));
    }
    double w;
    if (alpha == 0.0) {
      w = 1.0;
    } else if (alpha == 1.0) {
      w = 1.0 / static_cast<double>(degree);
    } else {
      w = std::pow(static_cast<double>(degree), -alpha);
    }
    weight_sum += w;
    weighted_quantity_sum += w * quantities[i];
  }
  return weighted_quantity_sum / weight_sum;
}

std::vector<double> quantities_of(const RdsSample& sample) {
  std::vector<double> q(sample.records.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = sample.records[i].quantity;
  return q;
}

std::vector<int> degrees_of(const RdsSample& sample) {
  std::vector<int> d(sample.records.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = sample.records[i].reported_degree;
  return d;
}

}  // namespace

double plain_mean(std::span<const double> quantities) {
  if (quantities.empty()) {
    throw ConfigError("estimator input must be non-empty");
  }
  double sum = 0.0;
  double count = 0.0;
  for (double q : quantities) {
    sum += q;
    count += 1.0;
  }
  return sum / count;
}

double plain_mean(const RdsSample& sample) {
  const auto q = quantities_of(sample);
  return plain_mean(std::span<const double>(q));
}

double vh_estimate(std::span<const double> quantities, std::span<const int> reported_degrees) {
  return weighted_mean_inv_pow(quantities, reported_degrees, 1.0);
}

double vh_estimate(const RdsSample& sample) {
  const auto q = quantities_of(sample);
  const auto d = degrees_of(sample);
  return vh_estimate(q, d);
}

double compromise_estimate(std::span<const double> quantities,
                           std::span<const int> reported_degrees, double alpha) {
  if (!std::isfinite(alpha)) {
    throw ConfigError("compromise exponent must be finite");
  }
  if (alpha < 0.0 || alpha > 1.0) {
    warn("compromise exponent " + std::to_string(alpha) + " lies outside [0, 1]");
  }
  return weighted_mean_inv_pow(quantities, reported_degrees, alpha);
}

double compromise_estimate(const RdsSample& sample, double alpha) {
  const auto q = quantities_of(sample);
  const auto d = degrees_of(sample);
  return compromise_estimate(q, d, alpha);
}

EstimateSet compute_estimates(const RdsSample& sample, std::span<const double> alphas) {
  const auto q = quantities_of(sample);
  const auto d = degrees_of(sample);
  EstimateSet set;
  set.plain_mean = plain_mean(std::span<const double>(q));
  set.vh = vh_estimate(q, d);
  for (double alpha : alphas) {
    set.compromise[alpha] = compromise_estimate(q, d, alpha);
  }
  return set;
}

}  // namespace rdsim
