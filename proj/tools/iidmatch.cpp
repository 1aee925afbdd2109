// iidmatch: generate type graphs, convert real-world graphs, and run
// benchmark experiments that emit CSV.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "iidmatch/harness.hpp"
#include "iidmatch/ingest.hpp"

namespace {

using namespace iidmatch;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitPartial = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// --config support: `key = value` lines become `--key=value` tokens placed
// right after the subcommand, so anything given on the command line wins.

std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::vector<std::string> out;
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError(path + ":" + std::to_string(line_no) + ": empty key");
    out.push_back("--" + key + "=" + value);
  }
  return out;
}

std::vector<std::string> expand_config(int argc, char** argv) {
  static const std::vector<std::string> kSubcommands{"generate", "ingest", "run", "sweep", "report"};
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
  }
  if (config.empty()) return args;
  std::size_t sub = 0;
  while (sub < args.size() && std::find(kSubcommands.begin(), kSubcommands.end(), args[sub]) == kSubcommands.end()) ++sub;
  if (sub == args.size()) return args;
  const auto extra = config_tokens(config);
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub) + 1, extra.begin(), extra.end());
  return args;
}

// ---------------------------------------------------------------------------

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<AlgoSpec> parse_roster(const std::string& algos, const std::string& variants) {
  std::vector<ExecMode> modes;
  for (const auto& v : split_list(variants)) {
    if (v == "vanilla")
      modes.push_back(ExecMode::vanilla);
    else if (v == "greedy")
      modes.push_back(ExecMode::greedy);
    else
      throw UsageError("unknown variant '" + v + "' (expected vanilla or greedy)");
  }
  if (modes.empty()) throw UsageError("--variants selects nothing");
  std::vector<std::string> names = split_list(algos);
  if (names.empty()) throw UsageError("--algos selects nothing");
  if (algos == "all") {
    names.clear();
    for (Policy p : kAllPolicies) names.push_back(to_string(p));
    for (const char* b : {"simple_greedy", "ranking", "category_advice", "three_pass"}) names.push_back(b);
  }
  std::vector<AlgoSpec> out;
  for (const auto& n : names) {
    if (n == "opt") continue;  // always reported
    if (auto p = parse_policy(n)) {
      for (ExecMode m : modes) out.push_back(AlgoSpec::of(*p, m));
      continue;
    }
    bool found = false;
    for (Baseline b : {Baseline::simple_greedy, Baseline::ranking, Baseline::category_advice, Baseline::three_pass})
      if (n == to_string(b)) {
        out.push_back(AlgoSpec::of(b));
        found = true;
      }
    if (!found) throw UsageError("unknown algorithm '" + n + "'");
  }
  return out;
}

Family require_family(const std::string& name) {
  if (auto f = parse_family(name)) return *f;
  throw UsageError("unknown family '" + name + "'");
}

struct FamilyFlags {
  std::string family;
  int n = 1000;
  double c = 1.0;
  int d = 5;
  double tau = 2.0;
  double kappa = 10.0;

  void add_to(CLI::App* app, bool required) {
    auto* f = app->add_option("--family", family, "graph family");
    if (required) f->required();
    app->add_option("--n", n, "size parameter (offline node count)");
    app->add_option("--c", c, "average degree (erdos_renyi, pref_attach)");
    app->add_option("--d", d, "regular degree (left_regular, right_regular)");
    app->add_option("--tau", tau, "power-law exponent (molloy_reed)");
    app->add_option("--kappa", kappa, "exponential cutoff (molloy_reed)");
  }

  FamilySpec spec() const {
    FamilySpec s;
    s.family = require_family(family);
    s.n = n;
    s.c = c;
    s.d = d;
    s.tau = tau;
    s.kappa = kappa;
    return s;
  }
};

/// Builds every random family once to surface parameter errors as usage errors.
void check_spec(const FamilySpec& s) {
  try {
    (void)generate(s, std::uint64_t{0});
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

struct RunFlags {
  std::string graph_file;
  std::string algos = "all";
  std::string variants = "vanilla,greedy";
  int trials = 100;
  std::uint64_t seed = 1;
  std::string csv = "-";
  int jobs = 1;
  bool timing = false;
  int opt_samples = kDefaultOptSamples;
  std::int64_t lp_row_limit = kDefaultLpRowLimit;
  std::string config;

  void add_to(CLI::App* app) {
    app->add_option("--algos", algos, "comma-separated algorithms, or 'all'");
    app->add_option("--variants", variants, "comma-separated subset of vanilla,greedy");
    app->add_option("--trials", trials, "trials per graph point")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "master seed");
    app->add_option("--csv", csv, "output CSV path, '-' for stdout");
    app->add_option("--jobs", jobs, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
    app->add_flag("--timing", timing, "fill the preprocess_ms/online_ms columns");
    app->add_option("--opt-samples", opt_samples, "Monte-Carlo samples for the fractional optimum")->check(CLI::PositiveNumber);
    app->add_option("--lp-row-limit", lp_row_limit, "skip LP-based preprocessing above this many constraints");
    app->add_option("--config", config, "file of 'key = value' lines (flags override)");
  }

  ExperimentConfig base() const {
    ExperimentConfig cfg;
    cfg.algorithms = parse_roster(algos, variants);
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.jobs = jobs;
    cfg.timing = timing;
    cfg.policy_options.opt_samples = opt_samples;
    cfg.policy_options.lp_row_limit = lp_row_limit;
    return cfg;
  }
};

int emit(const std::vector<AggregateRecord>& records, const std::string& path) {
  if (path == "-") {
    write_csv(std::cout, records);
    std::cout.flush();
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_csv(out, records);
  }
  for (const auto& r : records)
    if (r.skipped) std::cerr << "skipped: " << r.graph_id << " " << r.algorithm << "/" << r.variant << ": " << r.note << "\n";
  return any_skipped(records) ? kExitPartial : kExitOk;
}

void write_graph(const TypeGraph& tg, const std::string& path) {
  if (path == "-") {
    write_type_graph(std::cout, tg);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_type_graph(out, tg);
}

TypeGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open graph file " + path);
  return read_type_graph(in);
}

// ---------------------------------------------------------------------------
// report: pivot one or more CSVs into a ratio table (rows algorithm/variant,
// columns graph_id), in first-seen order.

int report(const std::vector<std::string>& inputs, const std::string& column) {
  std::vector<std::string> cols, rows;
  std::map<std::pair<std::string, std::string>, std::string> cell;
  static const std::vector<std::string> kHeader = split_list(std::string(kCsvHeader));
  const auto want = std::find(kHeader.begin(), kHeader.end(), column);
  if (want == kHeader.end() || want - kHeader.begin() < 5) throw UsageError("--value must name a numeric CSV column");
  const auto value_idx = static_cast<std::size_t>(want - kHeader.begin());
  for (const auto& path : inputs) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw UsageError(path + ": missing or unexpected CSV header");
    while (std::getline(in, line)) {
      std::vector<std::string> f;
      std::stringstream ss(line);
      std::string item;
      while (std::getline(ss, item, ',')) f.push_back(item);
      while (f.size() < kHeader.size()) f.emplace_back();
      const std::string col = f[2];
      const std::string row = f[4] == "none" ? f[3] : f[3] + "(" + f[4] + ")";
      if (std::find(cols.begin(), cols.end(), col) == cols.end()) cols.push_back(col);
      if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
      cell[{row, col}] = f[8] == "skipped" ? "skip" : f[value_idx];
    }
  }
  std::size_t w0 = 9;
  for (const auto& r : rows) w0 = std::max(w0, r.size());
  std::cout << std::left << std::setw(static_cast<int>(w0)) << "algorithm";
  for (const auto& c : cols) std::cout << "  " << std::setw(static_cast<int>(std::max<std::size_t>(c.size(), 8))) << c;
  std::cout << "\n";
  for (const auto& r : rows) {
    std::cout << std::setw(static_cast<int>(w0)) << r;
    for (const auto& c : cols) {
      std::string v = cell.count({r, c}) ? cell[{r, c}] : "";
      if (!v.empty() && v != "skip") {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", std::stod(v));
        v = buf;
      }
      std::cout << "  " << std::setw(static_cast<int>(std::max<std::size_t>(c.size(), 8))) << v;
    }
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online bipartite matching benchmarks under known i.i.d. arrivals"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  // generate
  FamilyFlags gen_family;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "-", gen_config;
  auto* gen = app.add_subcommand("generate", "write a type graph from a family");
  gen_family.add_to(gen, true);
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--out", gen_out, "output path, '-' for stdout");
  gen->add_option("--config", gen_config, "file of 'key = value' lines");

  // ingest
  std::string ing_in, ing_method = "partition", ing_out = "-", ing_config;
  std::uint64_t ing_seed = 1;
  auto* ing = app.add_subcommand("ingest", "convert an edge-list file into a type graph");
  ing->add_option("--in", ing_in, "edge list or Matrix Market file")->required();
  ing->add_option("--method", ing_method, "duplicate or partition")->check(CLI::IsMember({"duplicate", "partition"}));
  ing->add_option("--seed", ing_seed, "seed for the random partition");
  ing->add_option("--out", ing_out, "output path, '-' for stdout");
  ing->add_option("--config", ing_config, "file of 'key = value' lines");

  // run
  FamilyFlags run_family;
  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "evaluate algorithms on one graph or family point");
  run_family.add_to(run, false);
  run->add_option("--graph-file", run_flags.graph_file, "type-graph file");
  run_flags.add_to(run);

  // sweep
  FamilyFlags sw_family;
  RunFlags sw_flags;
  std::string sw_param;
  double sw_from = 0.0, sw_to = 0.0, sw_step = 0.0;
  auto* sweep = app.add_subcommand("sweep", "evaluate algorithms over a parameter grid");
  sw_family.add_to(sweep, true);
  sweep->add_option("--param", sw_param, "swept parameter")->required()->check(CLI::IsMember({"n", "c", "d", "tau", "kappa"}));
  sweep->add_option("--from", sw_from, "first grid value")->required();
  sweep->add_option("--to", sw_to, "last grid value")->required();
  sweep->add_option("--step", sw_step, "grid step")->required();
  sw_flags.add_to(sweep);

  // report
  std::vector<std::string> rep_inputs;
  std::string rep_value = "ratio", rep_config;
  auto* rep = app.add_subcommand("report", "print a ratio table from CSV files");
  rep->add_option("csv", rep_inputs, "harness CSV files")->required();
  rep->add_option("--value", rep_value, "column to tabulate");
  rep->add_option("--config", rep_config, "file of 'key = value' lines");

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*gen) {
      const FamilySpec spec = gen_family.spec();
      TypeGraph tg;
      try {
        tg = generate(spec, derive_seed(gen_seed, stream::graph));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      write_graph(tg, gen_out);
      return kExitOk;
    }

    if (*ing) {
      const GeneralGraph g = parse_graph_file(ing_in);
      Rng rng(derive_seed(ing_seed, stream::graph));
      const TypeGraph tg = ing_method == "duplicate" ? convert_duplicating(g) : convert_random_partition(g, rng);
      write_graph(tg, ing_out);
      return kExitOk;
    }

    if (*run) {
      ExperimentConfig cfg = run_flags.base();
      const bool have_family = !run_family.family.empty();
      if (have_family == !run_flags.graph_file.empty()) throw UsageError("give exactly one of --family or --graph-file");
      if (have_family) {
        const FamilySpec spec = run_family.spec();
        check_spec(spec);
        cfg.points.push_back(GraphPoint::from_spec(spec, to_string(spec.family)));
      } else {
        const std::string id = std::filesystem::path(run_flags.graph_file).stem().string();
        cfg.points.push_back(GraphPoint::from_graph("file", "path=" + run_flags.graph_file, id, read_graph_file(run_flags.graph_file)));
      }
      return emit(run_experiment(cfg), run_flags.csv);
    }

    if (*sweep) {
      if (!(sw_step > 0.0)) throw UsageError("--step must be > 0");
      if (sw_from > sw_to) throw UsageError("--from must be <= --to");
      ExperimentConfig cfg = sw_flags.base();
      const auto points = static_cast<long>(std::floor((sw_to - sw_from) / sw_step + 1e-9)) + 1;
      for (long i = 0; i < points; ++i) {
        const double x = sw_from + static_cast<double>(i) * sw_step;
        FamilySpec spec = sw_family.spec();
        if (sw_param == "n") spec.n = static_cast<int>(std::lround(x));
        if (sw_param == "c") spec.c = x;
        if (sw_param == "d") spec.d = static_cast<int>(std::lround(x));
        if (sw_param == "tau") spec.tau = x;
        if (sw_param == "kappa") spec.kappa = x;
        check_spec(spec);
        cfg.points.push_back(GraphPoint::from_spec(spec, std::string(to_string(spec.family)) + "-" + std::to_string(i)));
      }
      return emit(run_experiment(cfg), sw_flags.csv);
    }

    if (*rep) return report(rep_inputs, rep_value);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
