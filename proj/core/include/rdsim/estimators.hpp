#pragma once

#include <map>
#include <span>

#include "rdsim/rds.hpp"

namespace rdsim {

/// Point estimates of the population mean from one sample.
/// compromise[0] equals plain_mean and compromise[1] equals vh, bit-exactly.
struct EstimateSet {
  double plain_mean = 0.0;
  double vh = 0.0;
  std::map<double, double> compromise;
};

/// Unweighted average of the quantities.
double plain_mean(std::span<const double> quantities);
double plain_mean(const RdsSample& sample);

/// Self-normalized inverse-degree weighted mean,
/// (sum 1/D_i)^-1 * sum X_i/D_i, using reported degrees (all >= 1).
double vh_estimate(std::span<const double> quantities, std::span<const int> reported_degrees);
double vh_estimate(const RdsSample& sample);

/// Weighted mean with weights D_i^-alpha. alpha = 0 reproduces plain_mean
/// and alpha = 1 reproduces vh_estimate through the identical arithmetic
/// path. Exponents outside [0, 1] are permitted but emit a warning.
double compromise_estimate(std::span<const double> quantities,
                           std::span<const int> reported_degrees, double alpha);
double compromise_estimate(const RdsSample& sample, double alpha);

EstimateSet compute_estimates(const RdsSample& sample, std::span<const double> alphas);

/// Default compromise exponent grid.
inline constexpr double kDefaultAlphas[] = {0.0, 0.25, 0.5, 0.75, 1.0};

}  // namespace rdsim
