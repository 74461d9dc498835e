#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rdsim/network.hpp"
#include "rdsim/population.hpp"
#include "rdsim/rng.hpp"

namespace rdsim {

enum class ReferralKind { kPreferential, kInversePreferential, kUniform };
enum class SeedRule { kUniformSeeds, kDegreeProportionalSeeds };
enum class DegreeReporting { kExact, kPoissonStochastic };

const char* to_string(ReferralKind kind);
const char* to_string(SeedRule rule);
const char* to_string(DegreeReporting mode);
ReferralKind referral_from_string(const std::string& name);
SeedRule seed_rule_from_string(const std::string& name);
DegreeReporting degree_mode_from_string(const std::string& name);

/// Full feature vector of one recruitment process.
struct RdsConfig {
  int coupons = 3;
  int sample_size = 300;
  int num_seeds = 8;
  ReferralKind referral = ReferralKind::kUniform;
  SeedRule seed_rule = SeedRule::kUniformSeeds;
  DegreeReporting degree_reporting = DegreeReporting::kExact;
  double no_recruit_prob = 0.30;
  double preferential_exponent = 1.5;        // c in d^-c
  double inverse_preferential_base = 2.718281828459045235;  // a in a^d
};

constexpr int kSeedRecruiter = -1;

struct RdsRecord {
  std::size_t node;
  double quantity;
  int reported_degree;  // >= 1 always
  int true_degree;
  int wave;             // 0 for seeds
  int recruiter;        // node index, or kSeedRecruiter
  int restart_index;    // 0 for the initial tree
};

struct RdsSample {
  std::vector<RdsRecord> records;
  int restarts = 0;
  int waves_max = 0;
  // Diagnostics: respondents processed while budget remained and at least
  // one unsampled neighbor existed, and how many of those chose to recruit
  // nobody. Their ratio estimates the non-recruitment probability.
  long recruit_opportunities = 0;
  long voluntary_zero_recruits = 0;
};

/// Unnormalized referral weight for a recruiter-candidate pair at social
/// distance d. Distances are floored at 1e-12 before the preferential
/// power so d = 0 cannot produce an infinite weight.
double referral_weight(ReferralKind kind, double distance, double preferential_exponent,
                       double inverse_preferential_base);

/// Precomputed per-directed-edge distances and preferential weights,
/// aligned with the network's flat adjacency array. Shared read-only by
/// any number of concurrent runs over the same (network, population).
struct EdgeCache {
  std::vector<double> distance;     // |x_i - x_k| per adjacency slot of i
  std::vector<double> pref_weight;  // max(distance, 1e-12)^-c

  static EdgeCache build(const Network& net, const Population& pop,
                         double preferential_exponent);
};

/// Draws k distinct seeds among nodes not in `excluded`. Uniform rule
/// treats degree-0 nodes as eligible; the degree-proportional rule does
/// not (they carry zero weight). Throws ProcessExhaustedError when fewer
/// than k eligible nodes exist.
std::vector<std::size_t> select_seeds(const Network& net, SeedRule rule, std::size_t k,
                                      const std::vector<bool>& excluded, Rng& rng);

/// Referral distribution of `current` over its unsampled neighbors,
/// normalized to sum 1. Empty support yields an empty distribution.
struct ReferralDistribution {
  std::vector<std::size_t> support;
  std::vector<double> probabilities;

  bool empty() const { return support.empty(); }
};

ReferralDistribution referral_distribution(const Network& net, const Population& pop,
                                           std::size_t current,
                                           const std::vector<bool>& already_sampled,
                                           ReferralKind kind, double preferential_exponent,
                                           double inverse_preferential_base);

/// 0 with probability no_recruit_prob, otherwise uniform on {1..coupons}.
/// Feasibility capping happens later, at draw time.
int recruit_count(int coupons, double no_recruit_prob, Rng& rng);

/// Exact mode reports max(true_degree, 1); stochastic mode reports
/// max(Poisson(true_degree), 1). The floor keeps estimator weights finite.
int report_degree(int true_degree, DegreeReporting mode, Rng& rng);

/// Runs one coupon-limited recruitment chain to cfg.sample_size records.
/// Seeds are wave 0 and consume budget; recruiters are processed breadth-
/// first in recruitment order; when the frontier dies out early, fresh
/// seeds are drawn among unsampled nodes and the restart index increments.
/// Passing a prebuilt EdgeCache changes speed, not results.
RdsSample run_rds(const Network& net, const Population& pop, const RdsConfig& cfg, Rng& rng,
                  const EdgeCache* cache = nullptr);

/// Simple random walk: single recruitment, with replacement, uniform
/// referral. Returns the visited nodes, start first (steps + 1 entries).
/// Without an explicit start, one is drawn uniformly.
std::vector<std::size_t> run_random_walk(const Network& net, const Population& pop,
                                         std::size_t steps, Rng& rng,
                                         std::optional<std::size_t> start = std::nullopt);

}  // namespace rdsim
