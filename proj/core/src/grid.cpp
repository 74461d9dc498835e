#include "rdsim/grid.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "rdsim/errors.hpp"

namespace rdsim {

void GridSpec::apply_desk_scale() {
  networks_per_cell = 50;
  runs_per_network = 20;
  sensitivity_indices = {1, 5, 10};
  network_sizes = {1000};
}

void GridSpec::validate() const {
  if (topologies.empty() || network_sizes.empty() || coupon_values.empty() ||
      referrals.empty() || seed_rules.empty() || degree_modes.empty() ||
      sensitivity_indices.empty()) {
    throw ConfigError("grid feature lists must be non-empty");
  }
  if (sensitivity_steps < 1) throw ConfigError("sensitivity_steps must be >= 1");
  for (int idx : sensitivity_indices) {
    if (idx < 1 || idx > sensitivity_steps) {
      throw ConfigError("sensitivity index " + std::to_string(idx) + " outside 1.." +
                        std::to_string(sensitivity_steps));
    }
  }
  if (networks_per_cell < 1) throw ConfigError("networks_per_cell must be >= 1");
  if (runs_per_network < 1) throw ConfigError("runs_per_network must be >= 1");
  if (num_seeds < 1) throw ConfigError("num_seeds must be >= 1");
  if (!(no_recruit_prob >= 0.0 && no_recruit_prob <= 1.0)) {
    throw ConfigError("no_recruit_prob must lie in [0, 1]");
  }
  if (!(population_variance > 0.0)) throw ConfigError("population_variance must be positive");
  if (!(preferential_exponent > 0.0)) {
    throw ConfigError("preferential_exponent must be positive");
  }
  if (!(inverse_preferential_base > 0.0)) {
    throw ConfigError("inverse_preferential_base must be positive");
  }
  for (double alpha : compromise_alphas) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
      throw ConfigError("compromise exponent " + std::to_string(alpha) + " outside [0, 1]");
    }
  }
  for (int size : network_sizes) {
    if (size < 2) throw ConfigError("network size must be >= 2");
    if (sample_size > size) {
      throw ConfigError("sample_size " + std::to_string(sample_size) +
                        " exceeds network size " + std::to_string(size));
    }
  }
  if (sample_size < 1) throw ConfigError("sample_size must be >= 1");
  if (!allow_out_of_range) {
    for (int c : coupon_values) {
      if (c < 2 || c > 6) {
        throw ConfigError("coupons value " + std::to_string(c) +
                          " outside the standard set {2..6}; set allow_out_of_range to "
                          "override");
      }
    }
    for (int size : network_sizes) {
      if (size != 1000 && size != 3000) {
        throw ConfigError("network size " + std::to_string(size) +
                          " outside the standard set {1000, 3000}; set allow_out_of_range "
                          "to override");
      }
    }
  }
}

std::string EstimatorId::label() const {
  switch (kind) {
    case Kind::kPlainMean: return "plain_mean";
    case Kind::kVh: return "vh";
    case Kind::kCompromise: {
      char buf[32];
      auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), alpha);
      return "compromise_" + std::string(buf, end);
    }
  }
  return "?";
}

Decomposition decompose(std::span<const double> estimates, double truth) {
  if (estimates.empty()) {
    throw ConfigError("decompose needs at least one estimate");
  }
  const double n = static_cast<double>(estimates.size());
  double sum = 0.0;
  for (double e : estimates) sum += e;
  const double mean = sum / n;

  double ss_dev = 0.0;
  double ss_err = 0.0;
  for (double e : estimates) {
    const double dev = e - mean;
    const double err = e - truth;
    ss_dev += dev * dev;
    ss_err += err * err;
  }
  Decomposition d;
  d.bias_sq = (mean - truth) * (mean - truth);
  d.variance = ss_dev / n;
  d.mse = ss_err / n;
  return d;
}

std::vector<EstimatorId> report_estimators(std::span<const double> alphas) {
  std::vector<EstimatorId> out;
  out.push_back({EstimatorId::Kind::kPlainMean, 0.0});
  out.push_back({EstimatorId::Kind::kVh, 1.0});
  for (double alpha : alphas) {
    if (alpha != 0.0 && alpha != 1.0) {
      out.push_back({EstimatorId::Kind::kCompromise, alpha});
    }
  }
  return out;
}

namespace {

struct Combo {
  int coupons;
  ReferralKind referral;
  SeedRule seed_rule;
};

struct Supercell {
  TopologyKind topology;
  int sensitivity_index;
  double sensitivity_value;
  int network_size;
};

struct PerEstimatorNetStat {
  double mean_estimate = 0.0;
  Decomposition d;
  long runs = 0;
};

struct ComboChainStat {
  long waves_sum = 0;
  long restarts_sum = 0;
  long chains_ok = 0;
  long failures = 0;
};

struct TaskResult {
  double truth = 0.0;
  std::vector<PerEstimatorNetStat> stats;  // [combo][mode][estimator], flattened
  std::vector<ComboChainStat> chains;      // [combo]
};

std::uint64_t word_of(double v) { return std::bit_cast<std::uint64_t>(v); }

/// Runs one (supercell, network replicate): generates the population and
/// network, runs every RDS feature combination over it, and decomposes the
/// per-run estimates against this replicate's realized mean.
TaskResult run_task(const GridSpec& spec, const Supercell& sc, int replicate,
                    const std::vector<Combo>& combos, const std::vector<EstimatorId>& estimators) {
  const auto topo_word = static_cast<std::uint64_t>(sc.topology);
  const auto sens_word = word_of(sc.sensitivity_value);
  const auto size_word = static_cast<std::uint64_t>(sc.network_size);
  const auto rep_word = static_cast<std::uint64_t>(replicate);

  Rng pop_rng = derive_stream(spec.master_seed,
                              {kPopulationStream, topo_word, sens_word, size_word, rep_word});
  const Population pop = generate_population(static_cast<std::size_t>(sc.network_size),
                                             spec.population_mean, spec.population_variance,
                                             pop_rng);
  Rng net_rng =
      derive_stream(spec.master_seed, {kNetworkStream, topo_word, sens_word, size_word, rep_word});
  const Network net = generate_network(pop, {sc.topology, sc.sensitivity_value}, net_rng);
  const EdgeCache cache = EdgeCache::build(net, pop, spec.preferential_exponent);

  const bool want_exact =
      std::find(spec.degree_modes.begin(), spec.degree_modes.end(), DegreeReporting::kExact) !=
      spec.degree_modes.end();
  const bool want_stochastic =
      std::find(spec.degree_modes.begin(), spec.degree_modes.end(),
                DegreeReporting::kPoissonStochastic) != spec.degree_modes.end();
  const std::size_t n_modes = spec.degree_modes.size();
  const std::size_t n_est = estimators.size();

  TaskResult result;
  result.truth = pop.mean();
  result.stats.resize(combos.size() * n_modes * n_est);
  result.chains.resize(combos.size());

  std::vector<double> quantities(static_cast<std::size_t>(spec.sample_size));
  std::vector<int> degrees_exact(quantities.size());
  std::vector<int> degrees_stochastic(quantities.size());
  // estimates[mode][estimator][run]
  std::vector<std::vector<double>> estimates(n_modes * n_est);

  for (std::size_t ci = 0; ci < combos.size(); ++ci) {
    const Combo& combo = combos[ci];
    RdsConfig cfg;
    cfg.coupons = combo.coupons;
    cfg.sample_size = spec.sample_size;
    cfg.num_seeds = spec.num_seeds;
    cfg.referral = combo.referral;
    cfg.seed_rule = combo.seed_rule;
    cfg.degree_reporting = DegreeReporting::kExact;
    cfg.no_recruit_prob = spec.no_recruit_prob;
    cfg.preferential_exponent = spec.preferential_exponent;
    cfg.inverse_preferential_base = spec.inverse_preferential_base;

    for (auto& v : estimates) {
      v.clear();
      v.reserve(static_cast<std::size_t>(spec.runs_per_network));
    }
    ComboChainStat& chain_stat = result.chains[ci];

    const auto c_word = static_cast<std::uint64_t>(combo.coupons);
    const auto ref_word = static_cast<std::uint64_t>(combo.referral);
    const auto seed_word = static_cast<std::uint64_t>(combo.seed_rule);

    for (int run = 0; run < spec.runs_per_network; ++run) {
      const auto run_word = static_cast<std::uint64_t>(run);
      Rng run_rng =
          derive_stream(spec.master_seed, {kRunStream, topo_word, sens_word, size_word, rep_word,
                                           c_word, ref_word, seed_word, run_word});
      RdsSample sample;
      try {
        sample = run_rds(net, pop, cfg, run_rng, &cache);
      } catch (const ProcessExhaustedError&) {
        ++chain_stat.failures;
        continue;
      }
      ++chain_stat.chains_ok;
      chain_stat.waves_sum += sample.waves_max;
      chain_stat.restarts_sum += sample.restarts;

      const std::size_t n_rec = sample.records.size();
      for (std::size_t i = 0; i < n_rec; ++i) {
        quantities[i] = sample.records[i].quantity;
        degrees_exact[i] = sample.records[i].reported_degree;
      }
      if (want_stochastic) {
        // Paired design: stochastic reports are drawn for the same chain
        // realization from a dedicated stream.
        Rng deg_rng = derive_stream(
            spec.master_seed, {kDegreeReportStream, topo_word, sens_word, size_word, rep_word,
                               c_word, ref_word, seed_word, run_word});
        for (std::size_t i = 0; i < n_rec; ++i) {
          degrees_stochastic[i] =
              report_degree(sample.records[i].true_degree, DegreeReporting::kPoissonStochastic,
                            deg_rng);
        }
      }

      const std::span<const double> q(quantities.data(), n_rec);
      for (std::size_t mi = 0; mi < n_modes; ++mi) {
        const bool exact_mode = spec.degree_modes[mi] == DegreeReporting::kExact;
        const std::span<const int> d(exact_mode ? degrees_exact.data() : degrees_stochastic.data(),
                                     n_rec);
        for (std::size_t ei = 0; ei < n_est; ++ei) {
          const EstimatorId& est = estimators[ei];
          double value = 0.0;
          switch (est.kind) {
            case EstimatorId::Kind::kPlainMean: value = plain_mean(q); break;
            case EstimatorId::Kind::kVh: value = vh_estimate(q, d); break;
            case EstimatorId::Kind::kCompromise:
              value = compromise_estimate(q, d, est.alpha);
              break;
          }
          estimates[mi * n_est + ei].push_back(value);
        }
      }
    }

    for (std::size_t mi = 0; mi < n_modes; ++mi) {
      for (std::size_t ei = 0; ei < n_est; ++ei) {
        const auto& values = estimates[mi * n_est + ei];
        PerEstimatorNetStat& slot = result.stats[(ci * n_modes + mi) * n_est + ei];
        slot.runs = static_cast<long>(values.size());
        if (!values.empty()) {
          double sum = 0.0;
          for (double v : values) sum += v;
          slot.mean_estimate = sum / static_cast<double>(values.size());
          slot.d = decompose(values, result.truth);
        }
      }
    }
  }
  (void)want_exact;
  return result;
}

struct CellAccumulator {
  double bias_sq_sum = 0.0;
  double variance_sum = 0.0;
  double mse_sum = 0.0;
  long networks_with_data = 0;
  double estimate_sum = 0.0;  // weighted by runs
  long run_count = 0;
  long failures = 0;
  long waves_sum = 0;
  long restarts_sum = 0;
  long chains_ok = 0;
};

}  // namespace

GridResult run_grid(const GridSpec& spec, int workers, const NetworkStatSink& sink) {
  spec.validate();

  std::vector<Supercell> supercells;
  for (TopologyKind topo : spec.topologies) {
    for (int sidx : spec.sensitivity_indices) {
      for (int size : spec.network_sizes) {
        supercells.push_back(
            {topo, sidx, sensitivity_value(topo, sidx, spec.sensitivity_steps), size});
      }
    }
  }
  std::vector<Combo> combos;
  for (int c : spec.coupon_values) {
    for (ReferralKind ref : spec.referrals) {
      for (SeedRule rule : spec.seed_rules) {
        combos.push_back({c, ref, rule});
      }
    }
  }
  const std::vector<EstimatorId> estimators = report_estimators(spec.compromise_alphas);
  const std::size_t n_modes = spec.degree_modes.size();
  const std::size_t n_est = estimators.size();
  const std::size_t per_task = combos.size() * n_modes * n_est;

  const std::size_t total_tasks =
      supercells.size() * static_cast<std::size_t>(spec.networks_per_cell);

  // One accumulator per (supercell, combo, mode, estimator).
  std::vector<CellAccumulator> acc(supercells.size() * per_task);

  GridResult result;
  const bool keep_stats = spec.save_network_stats && !sink;

  auto fold_task = [&](std::size_t task_index, const TaskResult& task) {
    const std::size_t sc_index = task_index / static_cast<std::size_t>(spec.networks_per_cell);
    const int replicate =
        static_cast<int>(task_index % static_cast<std::size_t>(spec.networks_per_cell));
    const Supercell& sc = supercells[sc_index];
    for (std::size_t ci = 0; ci < combos.size(); ++ci) {
      const ComboChainStat& chain = task.chains[ci];
      for (std::size_t mi = 0; mi < n_modes; ++mi) {
        for (std::size_t ei = 0; ei < n_est; ++ei) {
          const PerEstimatorNetStat& stat = task.stats[(ci * n_modes + mi) * n_est + ei];
          CellAccumulator& a = acc[(sc_index * combos.size() + ci) * n_modes * n_est +
                                   mi * n_est + ei];
          a.failures += chain.failures;
          a.waves_sum += chain.waves_sum;
          a.restarts_sum += chain.restarts_sum;
          a.chains_ok += chain.chains_ok;
          if (stat.runs > 0) {
            a.bias_sq_sum += stat.d.bias_sq;
            a.variance_sum += stat.d.variance;
            a.mse_sum += stat.d.mse;
            ++a.networks_with_data;
            a.estimate_sum += stat.mean_estimate * static_cast<double>(stat.runs);
            a.run_count += stat.runs;
          }
          if ((keep_stats || sink) && stat.runs > 0) {
            NetworkStat row;
            row.cell = {sc.topology, sc.sensitivity_index, sc.network_size, combos[ci].coupons,
                        combos[ci].referral, combos[ci].seed_rule, spec.degree_modes[mi]};
            row.estimator = estimators[ei];
            row.network_index = replicate;
            row.truth = task.truth;
            row.mean_estimate = stat.mean_estimate;
            row.bias_sq = stat.d.bias_sq;
            row.variance = stat.d.variance;
            row.mse = stat.d.mse;
            row.runs = stat.runs;
            row.mean_waves =
                static_cast<double>(chain.waves_sum) / static_cast<double>(chain.chains_ok);
            row.mean_restarts =
                static_cast<double>(chain.restarts_sum) / static_cast<double>(chain.chains_ok);
            if (sink) {
              sink(row);
            } else {
              result.network_stats.push_back(row);
            }
          }
        }
      }
    }
  };

  // Chunked execution: tasks inside a chunk run in parallel, then the
  // chunk folds sequentially in task order, so aggregation order (and all
  // emitted bytes) are independent of the worker count.
  const int n_workers = std::max(1, workers);
  const std::size_t chunk = static_cast<std::size_t>(n_workers) * 8;
  std::vector<std::unique_ptr<TaskResult>> slots(chunk);
  for (std::size_t chunk_begin = 0; chunk_begin < total_tasks; chunk_begin += chunk) {
    const std::size_t chunk_end = std::min(chunk_begin + chunk, total_tasks);
    const std::size_t count = chunk_end - chunk_begin;
    if (n_workers == 1 || count == 1) {
      for (std::size_t t = 0; t < count; ++t) {
        const std::size_t task_index = chunk_begin + t;
        const std::size_t sc_index =
            task_index / static_cast<std::size_t>(spec.networks_per_cell);
        const int replicate =
            static_cast<int>(task_index % static_cast<std::size_t>(spec.networks_per_cell));
        slots[t] = std::make_unique<TaskResult>(
            run_task(spec, supercells[sc_index], replicate, combos, estimators));
      }
    } else {
      std::atomic<std::size_t> next{0};
      std::exception_ptr first_error;
      std::mutex error_mutex;
      auto worker = [&]() {
        for (;;) {
          const std::size_t t = next.fetch_add(1);
          if (t >= count) return;
          try {
            const std::size_t task_index = chunk_begin + t;
            const std::size_t sc_index =
                task_index / static_cast<std::size_t>(spec.networks_per_cell);
            const int replicate =
                static_cast<int>(task_index % static_cast<std::size_t>(spec.networks_per_cell));
            slots[t] = std::make_unique<TaskResult>(
                run_task(spec, supercells[sc_index], replicate, combos, estimators));
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            return;
          }
        }
      };
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(n_workers));
      for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
      if (first_error) std::rethrow_exception(first_error);
    }
    for (std::size_t t = 0; t < count; ++t) {
      fold_task(chunk_begin + t, *slots[t]);
      slots[t].reset();
    }
  }

  // Emit reports in coordinate order.
  for (std::size_t sc_index = 0; sc_index < supercells.size(); ++sc_index) {
    const Supercell& sc = supercells[sc_index];
    for (std::size_t ci = 0; ci < combos.size(); ++ci) {
      for (std::size_t mi = 0; mi < n_modes; ++mi) {
        for (std::size_t ei = 0; ei < n_est; ++ei) {
          const CellAccumulator& a = acc[(sc_index * combos.size() + ci) * n_modes * n_est +
                                         mi * n_est + ei];
          EstimatorReport report;
          report.cell = {sc.topology, sc.sensitivity_index, sc.network_size, combos[ci].coupons,
                         combos[ci].referral, combos[ci].seed_rule, spec.degree_modes[mi]};
          report.sensitivity_value = sc.sensitivity_value;
          report.estimator = estimators[ei];
          if (a.networks_with_data > 0) {
            const double nets = static_cast<double>(a.networks_with_data);
            report.bias_sq = a.bias_sq_sum / nets;
            report.variance = a.variance_sum / nets;
            report.mse = a.mse_sum / nets;
            report.mean_estimate = a.estimate_sum / static_cast<double>(a.run_count);
          } else {
            report.bias_sq = report.variance = report.mse = report.mean_estimate =
                std::numeric_limits<double>::quiet_NaN();
          }
          if (a.chains_ok > 0) {
            report.mean_waves =
                static_cast<double>(a.waves_sum) / static_cast<double>(a.chains_ok);
            report.mean_restarts =
                static_cast<double>(a.restarts_sum) / static_cast<double>(a.chains_ok);
          }
          report.run_count = a.run_count;
          report.failures = a.failures;
          result.reports.push_back(report);
        }
      }
    }
  }
  return result;
}

std::vector<EstimatorReport> aggregate_network_stats(const GridSpec& spec,
                                                     std::span<const NetworkStat> stats) {
  struct Entry {
    CellAccumulator acc;
    double sensitivity_value = 0.0;
  };
  std::map<std::pair<std::tuple<int, int, int, int, int, int, int>, std::string>, Entry> cells;
  for (const NetworkStat& s : stats) {
    Entry& e = cells[{s.cell.tuple(), s.estimator.label()}];
    e.sensitivity_value =
        sensitivity_value(s.cell.topology, s.cell.sensitivity_index, spec.sensitivity_steps);
    e.acc.bias_sq_sum += s.bias_sq;
    e.acc.variance_sum += s.variance;
    e.acc.mse_sum += s.mse;
    ++e.acc.networks_with_data;
    e.acc.estimate_sum += s.mean_estimate * static_cast<double>(s.runs);
    e.acc.run_count += s.runs;
    e.acc.waves_sum += std::lround(s.mean_waves * static_cast<double>(s.runs));
    e.acc.restarts_sum += std::lround(s.mean_restarts * static_cast<double>(s.runs));
    e.acc.chains_ok += s.runs;
  }

  // Rebuild EstimatorId from labels present in the spec's exponent grid.
  auto estimator_of = [&](const std::string& label) {
    for (const EstimatorId& est : report_estimators(spec.compromise_alphas)) {
      if (est.label() == label) return est;
    }
    throw ConfigError("unknown estimator label '" + label + "' in saved stats");
  };

  std::vector<EstimatorReport> reports;
  reports.reserve(cells.size());
  for (const auto& [key, entry] : cells) {
    const auto& [cell_tuple, label] = key;
    EstimatorReport report;
    report.cell = {static_cast<TopologyKind>(std::get<0>(cell_tuple)), std::get<1>(cell_tuple),
                   std::get<2>(cell_tuple), std::get<3>(cell_tuple),
                   static_cast<ReferralKind>(std::get<4>(cell_tuple)),
                   static_cast<SeedRule>(std::get<5>(cell_tuple)),
                   static_cast<DegreeReporting>(std::get<6>(cell_tuple))};
    report.sensitivity_value = entry.sensitivity_value;
    report.estimator = estimator_of(label);
    const double nets = static_cast<double>(entry.acc.networks_with_data);
    report.bias_sq = entry.acc.bias_sq_sum / nets;
    report.variance = entry.acc.variance_sum / nets;
    report.mse = entry.acc.mse_sum / nets;
    report.mean_estimate = entry.acc.estimate_sum / static_cast<double>(entry.acc.run_count);
    report.mean_waves =
        static_cast<double>(entry.acc.waves_sum) / static_cast<double>(entry.acc.chains_ok);
    report.mean_restarts =
        static_cast<double>(entry.acc.restarts_sum) / static_cast<double>(entry.acc.chains_ok);
    report.run_count = entry.acc.run_count;
    reports.push_back(report);
  }
  return reports;
}

namespace {

const EstimatorReport* find_report(std::span<const EstimatorReport> reports, const CellKey& cell,
                                   EstimatorId::Kind kind) {
  for (const EstimatorReport& r : reports) {
    if (r.cell == cell && r.estimator.kind == kind) return &r;
  }
  return nullptr;
}

}  // namespace

SummaryTable summary_table(std::span<const EstimatorReport> reports, int network_size,
                           int coupons) {
  SummaryTable table;
  table.network_size = network_size;
  table.coupons = coupons;
  table.referrals = {ReferralKind::kUniform, ReferralKind::kPreferential,
                     ReferralKind::kInversePreferential};

  // Collect the sensitivity indices present for this slice.
  std::vector<int> sens;
  for (const EstimatorReport& r : reports) {
    if (r.cell.network_size == network_size && r.cell.coupons == coupons &&
        std::find(sens.begin(), sens.end(), r.cell.sensitivity_index) == sens.end()) {
      sens.push_back(r.cell.sensitivity_index);
    }
  }
  if (sens.empty()) {
    throw MissingSliceError("no reports for network size " + std::to_string(network_size) +
                            ", coupons " + std::to_string(coupons));
  }
  std::sort(sens.begin(), sens.end());

  for (TopologyKind topo :
       {TopologyKind::kHomophily, TopologyKind::kInverseHomophily, TopologyKind::kRichGetRicher}) {
    for (SeedRule rule : {SeedRule::kUniformSeeds, SeedRule::kDegreeProportionalSeeds}) {
      SummaryRow row{topo, rule, {}};
      bool row_complete = true;
      for (ReferralKind ref : table.referrals) {
        SummaryCell cell;
        double mean_sum = 0.0, vh_exact_sum = 0.0, vh_stoch_sum = 0.0;
        int found = 0, found_stoch = 0;
        for (int sidx : sens) {
          const CellKey exact_key{topo, sidx, network_size, coupons, ref, rule,
                                  DegreeReporting::kExact};
          const auto* mean_rep = find_report(reports, exact_key, EstimatorId::Kind::kPlainMean);
          const auto* vh_rep = find_report(reports, exact_key, EstimatorId::Kind::kVh);
          if (mean_rep && vh_rep) {
            mean_sum += mean_rep->mse;
            vh_exact_sum += vh_rep->mse;
            ++found;
          }
          const CellKey stoch_key{topo, sidx, network_size, coupons, ref, rule,
                                  DegreeReporting::kPoissonStochastic};
          if (const auto* vh_stoch = find_report(reports, stoch_key, EstimatorId::Kind::kVh)) {
            vh_stoch_sum += vh_stoch->mse;
            ++found_stoch;
          }
        }
        if (found == 0) {
          row_complete = false;
          break;
        }
        cell.mean_mse = mean_sum / found;
        cell.vh_mse_exact = vh_exact_sum / found;
        cell.vh_mse_stochastic = found_stoch > 0
                                     ? vh_stoch_sum / found_stoch
                                     : std::numeric_limits<double>::quiet_NaN();
        cell.vh_wins_exact = cell.vh_mse_exact < cell.mean_mse;
        cell.vh_wins_stochastic = cell.vh_mse_stochastic < cell.mean_mse;
        row.by_referral.push_back(cell);
      }
      if (row_complete && !row.by_referral.empty()) table.rows.push_back(row);
    }
  }
  if (table.rows.empty()) {
    throw MissingSliceError("summary slice has no complete rows for network size " +
                            std::to_string(network_size) + ", coupons " +
                            std::to_string(coupons));
  }
  return table;
}

SensitivityTable sensitivity_table(std::span<const EstimatorReport> reports,
                                   TopologyKind topology, int network_size, SeedRule seed_rule,
                                   ReferralKind referral) {
  SensitivityTable table;
  table.topology = topology;
  table.network_size = network_size;
  table.seed_rule = seed_rule;
  table.referral = referral;

  std::vector<int> sens;
  for (const EstimatorReport& r : reports) {
    if (r.cell.topology == topology && r.cell.network_size == network_size &&
        r.cell.seed_rule == seed_rule && r.cell.referral == referral) {
      if (std::find(sens.begin(), sens.end(), r.cell.sensitivity_index) == sens.end()) {
        sens.push_back(r.cell.sensitivity_index);
      }
      if (std::find(table.coupon_values.begin(), table.coupon_values.end(), r.cell.coupons) ==
          table.coupon_values.end()) {
        table.coupon_values.push_back(r.cell.coupons);
      }
    }
  }
  if (sens.empty()) {
    throw MissingSliceError(std::string("no reports for sensitivity slice ") +
                            to_string(topology) + ", n=" + std::to_string(network_size) +
                            ", seeds=" + to_string(seed_rule) +
                            ", referral=" + to_string(referral));
  }
  std::sort(sens.begin(), sens.end());
  std::sort(table.coupon_values.begin(), table.coupon_values.end());

  for (int sidx : sens) {
    SensitivityRow row;
    row.sensitivity_index = sidx;
    for (int c : table.coupon_values) {
      SensitivityCell cell;
      const CellKey exact_key{topology, sidx, network_size, c, referral, seed_rule,
                              DegreeReporting::kExact};
      const auto* mean_exact = find_report(reports, exact_key, EstimatorId::Kind::kPlainMean);
      const auto* vh_exact = find_report(reports, exact_key, EstimatorId::Kind::kVh);
      if (mean_exact && vh_exact) {
        row.sensitivity_value = mean_exact->sensitivity_value;
        cell.d_mse_exact = vh_exact->mse - mean_exact->mse;
        cell.d_bias_sq_exact = vh_exact->bias_sq - mean_exact->bias_sq;
        cell.d_variance_exact = vh_exact->variance - mean_exact->variance;
        cell.mean_restarts = mean_exact->mean_restarts;
        cell.mean_waves = mean_exact->mean_waves;
      }
      const CellKey stoch_key{topology, sidx, network_size, c, referral, seed_rule,
                              DegreeReporting::kPoissonStochastic};
      const auto* mean_stoch = find_report(reports, stoch_key, EstimatorId::Kind::kPlainMean);
      const auto* vh_stoch = find_report(reports, stoch_key, EstimatorId::Kind::kVh);
      if (mean_stoch && vh_stoch) {
        cell.d_mse_stochastic = vh_stoch->mse - mean_stoch->mse;
        cell.d_bias_sq_stochastic = vh_stoch->bias_sq - mean_stoch->bias_sq;
        cell.d_variance_stochastic = vh_stoch->variance - mean_stoch->variance;
      }
      row.by_coupons.push_back(cell);
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace rdsim
