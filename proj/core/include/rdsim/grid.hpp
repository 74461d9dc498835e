#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "rdsim/estimators.hpp"
#include "rdsim/rds.hpp"
#include "rdsim/topology.hpp"

namespace rdsim {

/// The full experimental grid: feature lists crossed with sensitivity
/// values, plus the replication counts and the master seed. Defaults are
/// the full published grid; pass --desk-scale to the CLI (or shrink the
/// counts in a config file) for runs that finish in minutes.
struct GridSpec {
  std::vector<TopologyKind> topologies = {TopologyKind::kHomophily,
                                          TopologyKind::kInverseHomophily,
                                          TopologyKind::kRichGetRicher};
  int sensitivity_steps = 10;
  std::vector<int> sensitivity_indices = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<int> network_sizes = {1000, 3000};
  std::vector<int> coupon_values = {2, 3, 4, 5, 6};
  std::vector<ReferralKind> referrals = {ReferralKind::kPreferential,
                                         ReferralKind::kInversePreferential,
                                         ReferralKind::kUniform};
  std::vector<SeedRule> seed_rules = {SeedRule::kUniformSeeds,
                                      SeedRule::kDegreeProportionalSeeds};
  std::vector<DegreeReporting> degree_modes = {DegreeReporting::kExact,
                                               DegreeReporting::kPoissonStochastic};
  int networks_per_cell = 500;
  int runs_per_network = 100;
  int sample_size = 300;
  int num_seeds = 8;
  double no_recruit_prob = 0.30;
  double preferential_exponent = 1.5;
  double inverse_preferential_base = 2.718281828459045235;
  double population_mean = 175.0;
  double population_variance = 100.0;
  std::vector<double> compromise_alphas = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::uint64_t master_seed = 175100;
  bool allow_out_of_range = false;
  bool save_network_stats = true;

  bool operator==(const GridSpec&) const = default;

  /// Shrinks the grid to the quick defaults: 50 networks x 20 runs,
  /// sensitivity indices {1, 5, 10}, networks of size 1000.
  void apply_desk_scale();

  /// Validates invariants; paper-range checks are skipped when
  /// allow_out_of_range is set.
  void validate() const;
};

struct CellKey {
  TopologyKind topology;
  int sensitivity_index;
  int network_size;
  int coupons;
  ReferralKind referral;
  SeedRule seed_rule;
  DegreeReporting degree_mode;

  bool operator==(const CellKey&) const = default;
  auto tuple() const {
    return std::tuple(static_cast<int>(topology), sensitivity_index, network_size, coupons,
                      static_cast<int>(referral), static_cast<int>(seed_rule),
                      static_cast<int>(degree_mode));
  }
  bool operator<(const CellKey& other) const { return tuple() < other.tuple(); }
};

struct EstimatorId {
  enum class Kind { kPlainMean, kVh, kCompromise };
  Kind kind = Kind::kPlainMean;
  double alpha = 0.0;  // meaningful for kCompromise only

  std::string label() const;
  bool operator==(const EstimatorId&) const = default;
};

/// Per-cell aggregate for one estimator. Bias and variance are taken
/// against each replicate's realized population mean and then averaged
/// over replicates, which keeps bias_sq + variance = mse exact per
/// replicate before averaging.
struct EstimatorReport {
  CellKey cell;
  double sensitivity_value = 0.0;
  EstimatorId estimator;
  double mean_estimate = 0.0;
  double bias_sq = 0.0;
  double variance = 0.0;
  double mse = 0.0;
  double mean_restarts = 0.0;
  double mean_waves = 0.0;
  long run_count = 0;
  long failures = 0;
};

/// Per-network-replicate decomposition; the raw material behind density
/// plots and offline re-aggregation.
struct NetworkStat {
  CellKey cell;
  EstimatorId estimator;
  int network_index = 0;
  double truth = 0.0;
  double mean_estimate = 0.0;
  double bias_sq = 0.0;
  double variance = 0.0;
  double mse = 0.0;
  long runs = 0;
  double mean_waves = 0.0;
  double mean_restarts = 0.0;
};

struct GridResult {
  std::vector<EstimatorReport> reports;
  std::vector<NetworkStat> network_stats;  // empty when streamed to a sink
};

struct Decomposition {
  double bias_sq = 0.0;
  double variance = 0.0;
  double mse = 0.0;
};

/// bias_sq = (mean - truth)^2, variance = population variance of the
/// estimates, mse = mean squared error against truth.
Decomposition decompose(std::span<const double> estimates, double truth);

using NetworkStatSink = std::function<void(const NetworkStat&)>;

/// Executes the grid. Results are identical for any worker count: every
/// (cell, network, run) owns a stream derived from the master seed and
/// its coordinates, and aggregation folds in coordinate order. When
/// `sink` is non-null, per-network stats stream to it (in coordinate
/// order) instead of accumulating in the result.
GridResult run_grid(const GridSpec& spec, int workers = 1, const NetworkStatSink& sink = nullptr);

/// Re-aggregates cell reports from saved per-network stats; the inverse
/// of the network-stat stream.
std::vector<EstimatorReport> aggregate_network_stats(const GridSpec& spec,
                                                     std::span<const NetworkStat> stats);

struct SummaryCell {
  double mean_mse = 0.0;
  double vh_mse_exact = 0.0;
  double vh_mse_stochastic = 0.0;
  bool vh_wins_exact = false;
  bool vh_wins_stochastic = false;
};

struct SummaryRow {
  TopologyKind topology;
  SeedRule seed_rule;
  std::vector<SummaryCell> by_referral;
};

/// Tables 2/3 layout: rows topology x seed rule, columns referral, MSE
/// averaged over the sensitivity indices present.
struct SummaryTable {
  int network_size = 0;
  int coupons = 0;
  std::vector<ReferralKind> referrals;
  std::vector<SummaryRow> rows;
};

SummaryTable summary_table(std::span<const EstimatorReport> reports, int network_size,
                           int coupons);

struct SensitivityCell {
  double d_mse_exact = 0.0;       // VH minus plain mean
  double d_bias_sq_exact = 0.0;
  double d_variance_exact = 0.0;
  double d_mse_stochastic = 0.0;
  double d_bias_sq_stochastic = 0.0;
  double d_variance_stochastic = 0.0;
  double mean_restarts = 0.0;
  double mean_waves = 0.0;
};

struct SensitivityRow {
  int sensitivity_index = 0;
  double sensitivity_value = 0.0;
  std::vector<SensitivityCell> by_coupons;
};

/// Half-circle-plot data: signed VH-minus-mean differences per
/// (sensitivity value x coupon count) for one topology/size/seed/referral
/// slice, both degree-reporting modes side by side.
struct SensitivityTable {
  TopologyKind topology;
  int network_size = 0;
  SeedRule seed_rule;
  ReferralKind referral;
  std::vector<int> coupon_values;
  std::vector<SensitivityRow> rows;
};

SensitivityTable sensitivity_table(std::span<const EstimatorReport> reports,
                                   TopologyKind topology, int network_size, SeedRule seed_rule,
                                   ReferralKind referral);

/// Estimators reported per cell for a given exponent grid: plain mean,
/// VH, and each compromise exponent strictly inside (0, 1). Endpoint
/// exponents duplicate plain mean and VH bit-exactly, so they are not
/// repeated as separate report rows.
std::vector<EstimatorId> report_estimators(std::span<const double> alphas);

}  // namespace rdsim
