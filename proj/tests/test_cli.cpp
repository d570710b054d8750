#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <nlohmann/json.hpp>

#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  const std::string cmd = std::string(HB_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, QlsEvalMatchesReference) {
  const auto r = run("qcost eval qls --kappa 2 --eps 1e-3 --d 1 --norm1 1 --norm-max 1 --format json");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(hbtest::rel_close(j["value"].get<double>(), 1823726.3727286381, 1e-9));
}

TEST(Cli, SolveFixture) {
  const auto r = run("solve " + hbtest::fixture("small.mps").string() + " --pivot dantzig");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "optimal");
  EXPECT_NEAR(j["objective"].get<double>(), -8.0 / 3.0, 1e-12);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("--no-such-flag").code, 2);
  EXPECT_EQ(run("solve --pivot bogus x.mps").code, 2);
  const auto r = run("frobnicate");
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, ReportOnEmptyDirectory) {
  const auto dir = fs::temp_directory_path() / "hb_cli_empty";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto r = run("report " + dir.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("no CSV"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, GenBenchReport) {
  const auto dir = fs::temp_directory_path() / "hb_cli_pipeline";
  fs::remove_all(dir);
  ASSERT_EQ(run("gen --family independent_set --n 10 --p 0.3 --out " + (dir / "in").string()).code, 0);
  ASSERT_EQ(run("bench " + (dir / "in").string() + " --out " + (dir / "out").string()).code, 0);
  const auto r = run("report " + (dir / "out").string() + " --out " + (dir / "report.json").string());
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(hbtest::slurp(dir / "report.json"));
  EXPECT_EQ(j["schema"], "hybridbench-report/1");
  EXPECT_EQ(j["instances"].size(), 1u);
  EXPECT_EQ(j["advantage_curve"].size(), 181u);
  fs::remove_all(dir);
}

TEST(Cli, VerifyQsearch) {
  const auto r = run("qcost verify qsearch --size 16 --marked 2 --trials 20000 --seed 3");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LE(std::abs(j["z_score"].get<double>()), 4.0);
}
