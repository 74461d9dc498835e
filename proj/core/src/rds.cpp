#include "rdsim/rds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rdsim/errors.hpp"

namespace rdsim {

const char* to_string(ReferralKind kind) {
  switch (kind) {
    case ReferralKind::kPreferential: return "preferential";
    case ReferralKind::kInversePreferential: return "inverse_preferential";
    case ReferralKind::kUniform: return "uniform";
  }
  return "?";
}

const char* to_string(SeedRule rule) {
  switch (rule) {
    case SeedRule::kUniformSeeds: return "uniform";
    case SeedRule::kDegreeProportionalSeeds: return "degree_proportional";
  }
  return "?";
}

const char* to_string(DegreeReporting mode) {
  switch (mode) {
    case DegreeReporting::kExact: return "exact";
    case DegreeReporting::kPoissonStochastic: return "stochastic";
  }
  return "?";
}

ReferralKind referral_from_string(const std::string& name) {
  if (name == "preferential") return ReferralKind::kPreferential;
  if (name == "inverse_preferential") return ReferralKind::kInversePreferential;
  if (name == "uniform") return ReferralKind::kUniform;
  throw ConfigError("unknown referral '" + name +
                    "' (expected preferential, inverse_preferential or uniform)");
}

SeedRule seed_rule_from_string(const std::string& name) {
  if (name == "uniform") return SeedRule::kUniformSeeds;
  if (name == "degree_proportional") return SeedRule::kDegreeProportionalSeeds;
  throw ConfigError("unknown seed rule '" + name +
                    "' (expected uniform or degree_proportional)");
}

DegreeReporting degree_mode_from_string(const std::string& name) {
  if (name == "exact") return DegreeReporting::kExact;
  if (name == "stochastic") return DegreeReporting::kPoissonStochastic;
  throw ConfigError("unknown degree reporting mode '" + name +
                    "' (expected exact or stochastic)");
}

namespace {

constexpr double kDistanceFloor = 1e-12;

}  // namespace

double referral_weight(ReferralKind kind, double distance, double preferential_exponent,
                       double inverse_preferential_base) {
  switch (kind) {
    case ReferralKind::kPreferential:
      return std::pow(std::max(distance, kDistanceFloor), -preferential_exponent);
    case ReferralKind::kInversePreferential:
      return std::pow(inverse_preferential_base, distance);
    case ReferralKind::kUniform:
      return 1.0;
  }
  return 0.0;
}

EdgeCache EdgeCache::build(const Network& net, const Population& pop,
                           double preferential_exponent) {
  EdgeCache cache;
  cache.distance.resize(net.adjacency_size());
  cache.pref_weight.resize(net.adjacency_size());
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    std::size_t slot = net.adjacency_offset(i);
    for (std::size_t k : net.neighbors(i)) {
      const double d = social_distance(pop[i], pop[k]);
      cache.distance[slot] = d;
      cache.pref_weight[slot] = std::pow(std::max(d, kDistanceFloor), -preferential_exponent);
      ++slot;
    }
  }
  return cache;
}

std::vector<std::size_t> select_seeds(const Network& net, SeedRule rule, std::size_t k,
                                      const std::vector<bool>& excluded, Rng& rng) {
  const std::size_t n = net.node_count();
  std::vector<std::size_t> eligible;
  eligible.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < excluded.size() && excluded[i]) continue;
    if (rule == SeedRule::kDegreeProportionalSeeds && net.degree(i) == 0) continue;
    eligible.push_back(i);
  }
  if (eligible.size() < k) {
    throw ProcessExhaustedError("seed selection needs " + std::to_string(k) +
                                " eligible nodes, only " + std::to_string(eligible.size()) +
                                " remain");
  }

  std::vector<std::size_t> seeds;
  seeds.reserve(k);
  if (rule == SeedRule::kUniformSeeds) {
    // Partial Fisher-Yates: seeds come out in random order.
    for (std::size_t t = 0; t < k; ++t) {
      std::uniform_int_distribution<std::size_t> pick(t, eligible.size() - 1);
      std::swap(eligible[t], eligible[pick(rng)]);
      seeds.push_back(eligible[t]);
    }
  } else {
    std::vector<double> weight(eligible.size());
    double total = 0.0;
    for (std::size_t t = 0; t < eligible.size(); ++t) {
      weight[t] = static_cast<double>(net.degree(eligible[t]));
      total += weight[t];
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t drawn = 0; drawn < k; ++drawn) {
      const double target = unit(rng) * total;
      double cum = 0.0;
      std::size_t chosen = eligible.size();
      for (std::size_t t = 0; t < eligible.size(); ++t) {
        if (weight[t] <= 0.0) continue;
        cum += weight[t];
        if (cum >= target) {
          chosen = t;
          break;
        }
        chosen = t;  // fallback: last positive-weight entry absorbs fp slack
      }
      seeds.push_back(eligible[chosen]);
      total -= weight[chosen];
      weight[chosen] = 0.0;
    }
  }
  return seeds;
}

ReferralDistribution referral_distribution(const Network& net, const Population& pop,
                                           std::size_t current,
                                           const std::vector<bool>& already_sampled,
                                           ReferralKind kind, double preferential_exponent,
                                           double inverse_preferential_base) {
  ReferralDistribution dist;
  const double x_i = pop[current];
  for (std::size_t k : net.neighbors(current)) {
    if (k < already_sampled.size() && already_sampled[k]) continue;
    dist.support.push_back(k);
  }
  if (dist.support.empty()) return dist;

  dist.probabilities.resize(dist.support.size());
  if (kind == ReferralKind::kInversePreferential) {
    // Stabilized a^d: shift exponents by their max so weights stay finite
    // for arbitrarily spread-out populations.
    const double log_base = std::log(inverse_preferential_base);
    double max_t = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < dist.support.size(); ++t) {
      dist.probabilities[t] = social_distance(x_i, pop[dist.support[t]]) * log_base;
      max_t = std::max(max_t, dist.probabilities[t]);
    }
    for (double& w : dist.probabilities) w = std::exp(w - max_t);
  } else {
    for (std::size_t t = 0; t < dist.support.size(); ++t) {
      dist.probabilities[t] = referral_weight(kind, social_distance(x_i, pop[dist.support[t]]),
                                              preferential_exponent, inverse_preferential_base);
    }
  }
  const double total = std::accumulate(dist.probabilities.begin(), dist.probabilities.end(), 0.0);
  for (double& w : dist.probabilities) w /= total;
  return dist;
}

int recruit_count(int coupons, double no_recruit_prob, Rng& rng) {
  if (coupons < 1) {
    throw ConfigError("coupons must be at least 1");
  }
  std::bernoulli_distribution no_recruit(no_recruit_prob);
  if (no_recruit(rng)) return 0;
  std::uniform_int_distribution<int> count(1, coupons);
  return count(rng);
}

int report_degree(int true_degree, DegreeReporting mode, Rng& rng) {
  if (true_degree < 0) {
    throw ConfigError("true degree must be nonnegative");
  }
  if (mode == DegreeReporting::kExact || true_degree == 0) {
    return std::max(true_degree, 1);
  }
  std::poisson_distribution<int> poisson(static_cast<double>(true_degree));
  return std::max(poisson(rng), 1);
}

namespace {

/// Weighted support of a recruiter during sequential without-replacement
/// draws. Weights of chosen candidates are zeroed; totals are re-summed
/// per draw so results do not depend on accumulated fp drift.
struct SupportScratch {
  std::vector<std::size_t> nodes;
  std::vector<double> weights;

  void clear() {
    nodes.clear();
    weights.clear();
  }

  double total() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

  std::size_t draw(double unit_u, double total_weight) {
    const double target = unit_u * total_weight;
    double cum = 0.0;
    std::size_t chosen = nodes.size();
    for (std::size_t t = 0; t < nodes.size(); ++t) {
      if (weights[t] <= 0.0) continue;
      cum += weights[t];
      if (cum >= target) return t;
      chosen = t;  // last positive entry absorbs fp slack
    }
    return chosen;
  }
};

}  // namespace

RdsSample run_rds(const Network& net, const Population& pop, const RdsConfig& cfg, Rng& rng,
                  const EdgeCache* cache) {
  const std::size_t n = net.node_count();
  if (pop.size() != n) {
    throw ConfigError("run_rds: network and population sizes differ");
  }
  if (cfg.sample_size < 1 || static_cast<std::size_t>(cfg.sample_size) > n) {
    throw ConfigError("sample_size must lie in [1, network size]");
  }
  if (cfg.num_seeds < 1) throw ConfigError("num_seeds must be at least 1");
  if (cfg.coupons < 1) throw ConfigError("coupons must be at least 1");
  if (!(cfg.no_recruit_prob >= 0.0 && cfg.no_recruit_prob <= 1.0)) {
    throw ConfigError("no_recruit_prob must lie in [0, 1]");
  }

  const std::size_t m = static_cast<std::size_t>(cfg.sample_size);
  const double log_base = std::log(cfg.inverse_preferential_base);

  RdsSample sample;
  sample.records.reserve(m);
  std::vector<bool> sampled(n, false);

  auto record_node = [&](std::size_t node, int wave, int recruiter, int restart_index) {
    sampled[node] = true;
    const int true_degree = static_cast<int>(net.degree(node));
    const int reported = report_degree(true_degree, cfg.degree_reporting, rng);
    sample.records.push_back(
        {node, pop[node], reported, true_degree, wave, recruiter, restart_index});
    sample.waves_max = std::max(sample.waves_max, wave);
  };

  auto seed_batch = [&](int restart_index) {
    std::size_t eligible = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (sampled[i]) continue;
      if (cfg.seed_rule == SeedRule::kDegreeProportionalSeeds && net.degree(i) == 0) continue;
      ++eligible;
    }
    const std::size_t k = std::min<std::size_t>(cfg.num_seeds, eligible);
    if (k == 0) {
      throw ProcessExhaustedError("no eligible seed nodes remain before reaching sample size " +
                                  std::to_string(m));
    }
    const auto seeds = select_seeds(net, cfg.seed_rule, k, sampled, rng);
    for (std::size_t s : seeds) {
      if (sample.records.size() >= m) break;
      record_node(s, 0, kSeedRecruiter, restart_index);
    }
  };

  seed_batch(0);

  SupportScratch support;
  std::size_t cursor = 0;
  while (sample.records.size() < m) {
    if (cursor == sample.records.size()) {
      // Frontier died out; start a fresh tree.
      ++sample.restarts;
      seed_batch(sample.restarts);
      continue;
    }
    const RdsRecord recruiter = sample.records[cursor];
    ++cursor;

    int wanted = recruit_count(cfg.coupons, cfg.no_recruit_prob, rng);

    support.clear();
    const std::size_t i = recruiter.node;
    const double x_i = pop[i];
    std::size_t slot = net.adjacency_offset(i);
    for (std::size_t k : net.neighbors(i)) {
      if (!sampled[k]) {
        support.nodes.push_back(k);
        double w;
        switch (cfg.referral) {
          case ReferralKind::kUniform:
            w = 1.0;
            break;
          case ReferralKind::kPreferential:
            w = cache ? cache->pref_weight[slot]
                      : std::pow(std::max(social_distance(x_i, pop[k]), kDistanceFloor),
                                 -cfg.preferential_exponent);
            break;
          case ReferralKind::kInversePreferential:
            // Exponentiated below, after the max shift is known.
            w = (cache ? cache->distance[slot] : social_distance(x_i, pop[k])) * log_base;
            break;
        }
        support.weights.push_back(w);
      }
      ++slot;
    }
    if (cfg.referral == ReferralKind::kInversePreferential && !support.nodes.empty()) {
      const double max_t = *std::max_element(support.weights.begin(), support.weights.end());
      for (double& w : support.weights) w = std::exp(w - max_t);
    }

    if (!support.nodes.empty()) {
      ++sample.recruit_opportunities;
      if (wanted == 0) ++sample.voluntary_zero_recruits;
    }

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t available = support.nodes.size();
    while (wanted > 0 && available > 0 && sample.records.size() < m) {
      const double total = support.total();
      if (!(total > 0.0)) break;  // remaining weights all underflowed
      const std::size_t t = support.draw(unit(rng), total);
      record_node(support.nodes[t], recruiter.wave + 1, static_cast<int>(recruiter.node),
                  recruiter.restart_index);
      support.weights[t] = 0.0;
      --available;
      --wanted;
    }
  }
  return sample;
}

std::vector<std::size_t> run_random_walk(const Network& net, const Population& pop,
                                         std::size_t steps, Rng& rng,
                                         std::optional<std::size_t> start) {
  if (net.node_count() == 0) throw ConfigError("random walk needs a nonempty network");
  if (pop.size() != net.node_count()) {
    throw ConfigError("run_random_walk: network and population sizes differ");
  }
  if (steps < 1) throw ConfigError("random walk needs at least one step");

  std::size_t current;
  if (start.has_value()) {
    if (*start >= net.node_count()) throw ConfigError("random walk start node out of range");
    current = *start;
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, net.node_count() - 1);
    current = pick(rng);
  }
  if (net.degree(current) == 0) {
    throw ProcessExhaustedError("random walk start node " + std::to_string(current) +
                                " has degree 0");
  }

  std::vector<std::size_t> visits;
  visits.reserve(steps + 1);
  visits.push_back(current);
  for (std::size_t t = 0; t < steps; ++t) {
    const auto nb = net.neighbors(current);
    std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
    current = nb[pick(rng)];
    visits.push_back(current);
  }
  return visits;
}

}  // namespace rdsim
