#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

const std::string kCli = IIDMATCH_CLI_PATH;
const std::string kFixtures = IIDMATCH_FIXTURE_DIR;

struct Result {
  int code = -1;
  std::string out;
};

// stderr is discarded; tests only look at stdout and the exit status.
Result run(const std::string& args) {
  Result r;
  FILE* pipe = popen((kCli + " " + args + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "iidmatch_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("run --family bogus --n 5").code, 2);
  EXPECT_EQ(run("run --family ut --n 5 --trials 0").code, 2);
  EXPECT_EQ(run("generate --family fh --n 42").code, 2);
  EXPECT_EQ(run("sweep --family erdos_renyi --n 20 --param c --from 3 --to 1 --step 1").code, 2);
}

TEST(Cli, HelpExitsWithZero) { EXPECT_EQ(run("--help").code, 0); }

TEST(Cli, GenerateWritesTypeGraph) {
  const auto r = run("generate --family ut --n 3 --out -");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "m 3 L 3 R 3\n0: 0\n1: 0 1\n2: 0 1 2\n");
}

TEST(Cli, GeneratedFileRunsLikeTheFamily) {
  const auto path = scratch("ut12.txt");
  ASSERT_EQ(run("generate --family ut --n 12 --out " + path.string()).code, 0);
  const auto r = run("run --graph-file " + path.string() + " --algos simple_greedy --trials 4 --csv -");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 3u);
  EXPECT_NE(r.out.find("file,path="), std::string::npos);
}

TEST(Cli, IngestBothMethods) {
  const auto dup = run("ingest --in " + kFixtures + "/toy_social.mtx --method duplicate --out -");
  ASSERT_EQ(dup.code, 0);
  EXPECT_EQ(dup.out.rfind("m 30 L 30 R 30\n", 0), 0u);
  const auto part = run("ingest --in " + kFixtures + "/toy_social.mtx --method partition --seed 5 --out -");
  ASSERT_EQ(part.code, 0);
  EXPECT_EQ(part.out.rfind("m 15 L 15 R 15\n", 0), 0u);
  EXPECT_EQ(part.out, run("ingest --in " + kFixtures + "/toy_social.mtx --method partition --seed 5 --out -").out);
}

TEST(Cli, IngestRejectsMalformedInput) {
  const auto path = scratch("bad.txt");
  std::ofstream(path) << "1 2\n3 x\n";
  EXPECT_EQ(run("ingest --in " + path.string() + " --out -").code, 2);
  EXPECT_NE(run("ingest --in " + kFixtures + "/does_not_exist.txt --out -").code, 0);
}

TEST(Cli, RunIsByteIdenticalAcrossJobs) {
  const std::string args = "run --family erdos_renyi --n 60 --c 4 --algos all --trials 9 --seed 17 --csv -";
  const auto a = run(args + " --jobs 1"), b = run(args + " --jobs 3");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(lines(a.out), 1u + 15u);
}

TEST(Cli, SkippedRowsExitWithThree) {
  const auto r = run("run --family ut --n 30 --algos brubach --lp-row-limit 10 --trials 2 --csv -");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find(",skipped,"), std::string::npos);
}

TEST(Cli, SweepEmitsOneBlockPerGridPoint) {
  const auto r = run("sweep --family erdos_renyi --n 30 --param c --from 1 --to 3 --step 0.5 --algos simple_greedy,ranking --trials 3 --csv -");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 1u + 5u * 3u);
  EXPECT_NE(r.out.find("n=30;c=2.5"), std::string::npos);
}

TEST(Cli, ReportTabulatesCsv) {
  const auto path = scratch("report.csv");
  ASSERT_EQ(run("run --family ut --n 20 --trials 3 --algos simple_greedy,ranking --csv " + path.string()).code, 0);
  const auto r = run("report " + path.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("simple_greedy"), std::string::npos);
  EXPECT_NE(r.out.find("opt            1.00"), std::string::npos);
}
