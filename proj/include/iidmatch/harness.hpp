#pragma once

// Experiment runner. Every trial samples one instance, runs every requested
// algorithm on it plus the offline optimum, and the per-trial numbers are
// folded into one record per (graph point, algorithm, variant).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "iidmatch/generators.hpp"
#include "iidmatch/iid_algorithms.hpp"
#include "iidmatch/online_baselines.hpp"

namespace iidmatch {

enum class Baseline { simple_greedy, ranking, category_advice, three_pass };

inline const char* to_string(Baseline b) {
  switch (b) {
    case Baseline::simple_greedy: return "simple_greedy";
    case Baseline::ranking: return "ranking";
    case Baseline::category_advice: return "category_advice";
    case Baseline::three_pass: return "three_pass";
  }
  return "?";
}

/// One CSV row's algorithm/variant: either a type-graph-oblivious baseline or
/// a policy run in vanilla or greedy mode.
struct AlgoSpec {
  std::optional<Baseline> baseline;
  std::optional<Policy> policy;
  ExecMode mode = ExecMode::vanilla;

  static AlgoSpec of(Baseline b) { return {b, std::nullopt, ExecMode::vanilla}; }
  static AlgoSpec of(Policy p, ExecMode m) { return {std::nullopt, p, m}; }

  std::string name() const { return baseline ? to_string(*baseline) : to_string(*policy); }
  std::string variant() const { return baseline ? "none" : to_string(mode); }

  /// Stream tag for this algorithm's online randomness. Both variants of a
  /// policy share it, so their runs see identical suggestions.
  std::uint64_t stream() const {
    return baseline ? 100 + static_cast<std::uint64_t>(*baseline) : 200 + static_cast<std::uint64_t>(*policy);
  }
};

/// Policies in both modes followed by the four baselines.
inline std::vector<AlgoSpec> full_roster() {
  std::vector<AlgoSpec> out;
  for (Policy p : kAllPolicies) {
    out.push_back(AlgoSpec::of(p, ExecMode::vanilla));
    out.push_back(AlgoSpec::of(p, ExecMode::greedy));
  }
  for (Baseline b : {Baseline::simple_greedy, Baseline::ranking, Baseline::category_advice, Baseline::three_pass})
    out.push_back(AlgoSpec::of(b));
  return out;
}

/// A graph the experiment evaluates. Either a family spec (regenerated per
/// trial when the family is random) or a fixed graph.
struct GraphPoint {
  std::string family;
  std::string params;
  std::string graph_id;
  std::optional<FamilySpec> spec;
  std::shared_ptr<const TypeGraph> fixed;

  static GraphPoint from_spec(const FamilySpec& s, std::string id) {
    return {to_string(s.family), family_params(s), std::move(id), s, nullptr};
  }
  static GraphPoint from_graph(std::string family, std::string params, std::string id, TypeGraph tg) {
    return {std::move(family), std::move(params), std::move(id), std::nullopt, std::make_shared<const TypeGraph>(std::move(tg))};
  }

  bool regenerates() const { return spec && is_random_family(spec->family); }
};

struct ExperimentConfig {
  std::vector<GraphPoint> points;
  std::vector<AlgoSpec> algorithms;
  int trials = 100;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool timing = false;
  PolicyOptions policy_options;
};

struct AggregateRecord {
  std::string family;
  std::string params;
  std::string graph_id;
  std::string algorithm;
  std::string variant;
  int trials = 0;
  double mean_alg = 0.0;
  double mean_opt = 0.0;
  double ratio = 0.0;
  double ratio_stddev = 0.0;
  std::optional<double> preprocess_ms;
  std::optional<double> online_ms;
  bool skipped = false;
  std::string note;
};

// Derived-seed stream tags.
namespace stream {
inline constexpr std::uint64_t graph = 1;
inline constexpr std::uint64_t instance = 2;
inline constexpr std::uint64_t preprocess = 3;
inline constexpr std::uint64_t online = 4;
}  // namespace stream

/// Outcome of one algorithm on one trial.
struct AlgoOutcome {
  std::size_t size = 0;
  double preprocess_ms = 0.0;
  double online_ms = 0.0;
  bool skipped = false;
  std::string note;
};

struct TrialResult {
  std::size_t opt = 0;
  double opt_ms = 0.0;
  std::vector<AlgoOutcome> algos;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// Policy states for one graph, computed once per distinct policy. A state
/// stays empty when the LP guard trips; `notes` then carries the reason.
struct PreparedPolicies {
  std::vector<std::optional<PolicyState>> state;  // indexed by Policy
  std::vector<double> ms;
  std::vector<std::string> notes;
};

inline PreparedPolicies prepare_policies(const TypeGraph& tg, const std::vector<AlgoSpec>& algos, const PolicyOptions& opt,
                                         std::uint64_t seed_base) {
  PreparedPolicies out;
  out.state.resize(kAllPolicies.size());
  out.ms.assign(kAllPolicies.size(), 0.0);
  out.notes.resize(kAllPolicies.size());
  std::vector<char> needed(kAllPolicies.size(), 0);
  for (const auto& a : algos)
    if (a.policy) needed[static_cast<std::size_t>(*a.policy)] = 1;
  for (Policy p : kAllPolicies) {
    const auto i = static_cast<std::size_t>(p);
    if (!needed[i]) continue;
    Rng rng(derive_seed(seed_base, stream::preprocess, static_cast<std::uint64_t>(p)));
    const auto t0 = Clock::now();
    try {
      out.state[i] = preprocess(p, tg, rng, opt);
    } catch (const LpGuardError& e) {
      out.notes[i] = e.what();
    }
    out.ms[i] = ms_since(t0);
  }
  return out;
}

}  // namespace detail

/// Runs every algorithm on the instance drawn for (point_seed, trial).
/// `prep` must hold the states for the policies `algos` uses.
inline TrialResult run_trial(const TypeGraph& tg, const std::vector<AlgoSpec>& algos, const detail::PreparedPolicies& prep,
                             std::uint64_t point_seed, int trial) {
  using detail::Clock;
  const auto t = static_cast<std::uint64_t>(trial);
  const InstanceStream inst = sample_instance(tg, derive_seed(point_seed, t, stream::instance));
  TrialResult res;
  {
    const auto t0 = Clock::now();
    const Matching warm = simple_greedy(inst);
    res.opt = max_matching(inst, &warm).size();
    res.opt_ms = detail::ms_since(t0);
  }
  for (const auto& a : algos) {
    AlgoOutcome out;
    Rng rng(derive_seed(point_seed, t, stream::online, a.stream()));
    if (a.policy) {
      const auto pi = static_cast<std::size_t>(*a.policy);
      out.preprocess_ms = prep.ms[pi];
      if (!prep.state[pi]) {
        out.skipped = true;
        out.note = prep.notes[pi];
        res.algos.push_back(std::move(out));
        continue;
      }
      const auto t0 = Clock::now();
      const Matching m = run_policy(*a.policy, *prep.state[pi], inst, a.mode, rng);
      out.online_ms = detail::ms_since(t0);
      out.size = m.size();
    } else {
      const auto t0 = Clock::now();
      const auto sigma = Permutation::identity(tg.right_count);
      Matching m(0, 0);
      switch (*a.baseline) {
        case Baseline::simple_greedy: m = simple_greedy(inst); break;
        case Baseline::ranking: m = ranking(inst, rng); break;
        case Baseline::category_advice: m = category_advice(inst, sigma); break;
        case Baseline::three_pass: m = three_pass(inst, sigma); break;
      }
      out.online_ms = detail::ms_since(t0);
      out.size = m.size();
    }
    if (out.size > res.opt)
      throw std::logic_error(a.name() + "/" + a.variant() + " beat the optimum on trial " + std::to_string(trial));
    res.algos.push_back(std::move(out));
  }
  return res;
}

namespace detail {

inline AggregateRecord fold(const GraphPoint& gp, const std::string& algorithm, const std::string& variant,
                            const std::vector<TrialResult>& trials, std::optional<std::size_t> algo, bool timing) {
  AggregateRecord rec;
  rec.family = gp.family;
  rec.params = gp.params;
  rec.graph_id = gp.graph_id;
  rec.algorithm = algorithm;
  rec.variant = variant;
  for (const auto& tr : trials)
    if (algo && tr.algos[*algo].skipped) {
      rec.skipped = true;
      rec.note = tr.algos[*algo].note;
      return rec;
    }
  const auto n = trials.size();
  rec.trials = static_cast<int>(n);
  double sum_alg = 0.0, sum_opt = 0.0, sum_pre = 0.0, sum_on = 0.0;
  std::vector<double> per_trial;
  per_trial.reserve(n);
  for (const auto& tr : trials) {
    const double a = algo ? static_cast<double>(tr.algos[*algo].size) : static_cast<double>(tr.opt);
    const double o = static_cast<double>(tr.opt);
    sum_alg += a;
    sum_opt += o;
    per_trial.push_back(o > 0.0 ? a / o : 1.0);
    if (algo) {
      sum_pre += tr.algos[*algo].preprocess_ms;
      sum_on += tr.algos[*algo].online_ms;
    } else {
      sum_on += tr.opt_ms;
    }
  }
  rec.mean_alg = sum_alg / static_cast<double>(n);
  rec.mean_opt = sum_opt / static_cast<double>(n);
  rec.ratio = sum_opt > 0.0 ? sum_alg / sum_opt : 1.0;
  if (n > 1) {
    double mean = 0.0;
    for (double x : per_trial) mean += x;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : per_trial) ss += (x - mean) * (x - mean);
    rec.ratio_stddev = std::sqrt(ss / static_cast<double>(n - 1));
  }
  if (timing) {
    rec.preprocess_ms = sum_pre / static_cast<double>(n);
    rec.online_ms = sum_on / static_cast<double>(n);
  }
  return rec;
}

}  // namespace detail

/// Runs all points. Output order: points in config order; within a point,
/// algorithms in config order followed by the OPT row. Numbers depend only
/// on the config (and never on `jobs`), except timing columns.
inline std::vector<AggregateRecord> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const int jobs = std::max(1, cfg.jobs);
  std::vector<AggregateRecord> records;

  for (std::size_t pi = 0; pi < cfg.points.size(); ++pi) {
    const GraphPoint& gp = cfg.points[pi];
    const std::uint64_t point_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(pi));

    // Shared graph and preprocessing unless the graph is redrawn per trial.
    std::shared_ptr<const TypeGraph> shared = gp.fixed;
    if (!shared && !gp.regenerates())
      shared = std::make_shared<const TypeGraph>(generate(*gp.spec, derive_seed(point_seed, stream::graph)));
    std::optional<detail::PreparedPolicies> shared_prep;
    if (shared) shared_prep = detail::prepare_policies(*shared, cfg.algorithms, cfg.policy_options, point_seed);

    std::vector<TrialResult> results(static_cast<std::size_t>(cfg.trials));
    auto work = [&](int t) {
      if (shared) {
        results[static_cast<std::size_t>(t)] = run_trial(*shared, cfg.algorithms, *shared_prep, point_seed, t);
        return;
      }
      const std::uint64_t trial_seed = derive_seed(point_seed, static_cast<std::uint64_t>(t), stream::graph);
      const TypeGraph tg = generate(*gp.spec, trial_seed);
      const auto prep = detail::prepare_policies(tg, cfg.algorithms, cfg.policy_options, trial_seed);
      results[static_cast<std::size_t>(t)] = run_trial(tg, cfg.algorithms, prep, point_seed, t);
    };

    if (jobs == 1) {
      for (int t = 0; t < cfg.trials; ++t) work(t);
    } else {
      std::atomic<int> next{0};
      std::exception_ptr failure;
      std::mutex failure_mu;
      std::vector<std::thread> pool;
      for (int j = 0; j < std::min(jobs, cfg.trials); ++j)
        pool.emplace_back([&] {
          for (int t = next++; t < cfg.trials; t = next++) {
            try {
              work(t);
            } catch (...) {
              std::lock_guard<std::mutex> lock(failure_mu);
              if (!failure) failure = std::current_exception();
            }
          }
        });
      for (auto& th : pool) th.join();
      if (failure) std::rethrow_exception(failure);
    }

    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a)
      records.push_back(detail::fold(gp, cfg.algorithms[a].name(), cfg.algorithms[a].variant(), results, a, cfg.timing));
    records.push_back(detail::fold(gp, "opt", "none", results, std::nullopt, cfg.timing));
  }
  return records;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr std::string_view kCsvHeader =
    "family,params,graph_id,algorithm,variant,trials,mean_alg,mean_opt,ratio,ratio_stddev,preprocess_ms,online_ms";

/// Skipped rows carry trials=0, the literal `skipped` in the ratio column and
/// empty numeric cells.
inline void write_csv_row(std::ostream& out, const AggregateRecord& r) {
  auto num = [](double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return std::string(buf);
  };
  out << r.family << ',' << r.params << ',' << r.graph_id << ',' << r.algorithm << ',' << r.variant << ',';
  if (r.skipped) {
    out << "0,,,skipped,,,\n";
    return;
  }
  out << r.trials << ',' << num(r.mean_alg) << ',' << num(r.mean_opt) << ',' << num(r.ratio) << ',' << num(r.ratio_stddev)
      << ',' << (r.preprocess_ms ? num(*r.preprocess_ms) : "") << ',' << (r.online_ms ? num(*r.online_ms) : "") << '\n';
}

inline void write_csv(std::ostream& out, const std::vector<AggregateRecord>& records, bool header = true) {
  if (header) out << kCsvHeader << '\n';
  for (const auto& r : records) write_csv_row(out, r);
}

inline bool any_skipped(const std::vector<AggregateRecord>& records) {
  for (const auto& r : records)
    if (r.skipped) return true;
  return false;
}

}  // namespace iidmatch
