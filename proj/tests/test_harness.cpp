#include <gtest/gtest.h>

#include <sstream>

#include "iidmatch/harness.hpp"

using namespace iidmatch;

namespace {

ExperimentConfig small_config(int jobs) {
  ExperimentConfig cfg;
  cfg.points.push_back(GraphPoint::from_spec({Family::erdos_renyi, 40, 3.0}, "er"));
  cfg.points.push_back(GraphPoint::from_spec({Family::ut, 24}, "ut"));
  cfg.algorithms = full_roster();
  cfg.trials = 7;
  cfg.seed = 99;
  cfg.jobs = jobs;
  return cfg;
}

std::string csv_of(const std::vector<AggregateRecord>& recs) {
  std::ostringstream out;
  write_csv(out, recs);
  return out.str();
}

}  // namespace

TEST(Harness, OutputDoesNotDependOnJobs) {
  const auto one = csv_of(run_experiment(small_config(1)));
  EXPECT_EQ(one, csv_of(run_experiment(small_config(3))));
  EXPECT_EQ(one, csv_of(run_experiment(small_config(8))));
}

TEST(Harness, RowsFollowRosterThenOpt) {
  const auto cfg = small_config(1);
  const auto recs = run_experiment(cfg);
  const std::size_t per_point = cfg.algorithms.size() + 1;
  ASSERT_EQ(cfg.algorithms.size(), 14u);
  ASSERT_EQ(recs.size(), 2 * per_point);
  for (std::size_t p = 0; p < 2; ++p) {
    const auto& opt = recs[p * per_point + per_point - 1];
    EXPECT_EQ(opt.algorithm, "opt");
    EXPECT_DOUBLE_EQ(opt.ratio, 1.0);
    for (std::size_t a = 0; a + 1 < per_point; ++a) {
      const auto& r = recs[p * per_point + a];
      EXPECT_EQ(r.algorithm, cfg.algorithms[a].name());
      EXPECT_EQ(r.variant, cfg.algorithms[a].variant());
      EXPECT_EQ(r.trials, 7);
      EXPECT_LE(r.ratio, 1.0 + 1e-12);
      EXPECT_DOUBLE_EQ(r.mean_opt, opt.mean_opt);
    }
  }
}

TEST(Harness, CsvHeaderAndColumnCount) {
  const auto text = csv_of(run_experiment(small_config(1)));
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kCsvHeader);
  while (std::getline(in, line)) EXPECT_EQ(std::count(line.begin(), line.end(), ','), 11) << line;
}

TEST(Harness, TimingColumnsOnlyWhenAsked) {
  auto cfg = small_config(1);
  cfg.timing = true;
  for (const auto& r : run_experiment(cfg)) {
    EXPECT_TRUE(r.online_ms.has_value());
  }
  for (const auto& r : run_experiment(small_config(1))) {
    EXPECT_FALSE(r.online_ms.has_value());
    EXPECT_FALSE(r.preprocess_ms.has_value());
  }
}

TEST(Harness, LpGuardProducesSkippedRows) {
  ExperimentConfig cfg;
  cfg.points.push_back(GraphPoint::from_spec({Family::ut, 30}, "ut"));
  cfg.algorithms = {AlgoSpec::of(Policy::brubach, ExecMode::vanilla), AlgoSpec::of(Baseline::simple_greedy)};
  cfg.trials = 2;
  cfg.policy_options.lp_row_limit = 10;
  const auto recs = run_experiment(cfg);
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_TRUE(recs[0].skipped);
  EXPECT_FALSE(recs[0].note.empty());
  EXPECT_FALSE(recs[1].skipped);
  EXPECT_TRUE(any_skipped(recs));
  std::ostringstream out;
  write_csv_row(out, recs[0]);
  EXPECT_EQ(out.str(), "ut,n=30,ut,brubach,vanilla,0,,,skipped,,,\n");
}

TEST(Harness, SeedChangesResults) {
  auto a = small_config(1), b = small_config(1);
  b.seed = 100;
  EXPECT_NE(csv_of(run_experiment(a)), csv_of(run_experiment(b)));
}

TEST(Harness, RejectsZeroTrials) {
  auto cfg = small_config(1);
  cfg.trials = 0;
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
}
