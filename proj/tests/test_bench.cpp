#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "hybridbench/bench.hpp"
#include "hybridbench/fetch.hpp"
#include "hybridbench/instance_gen.hpp"
#include "hybridbench/report.hpp"
#include "support.hpp"

using namespace hybridbench;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("hb_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::string csv_with(const std::string& id, const std::vector<double>& times,
                     const std::string& flags = "") {
  std::ostringstream s;
  s << "# schema=" << kCsvSchema << "\n";
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) s << (i ? "," : "") << cols[i];
  s << "\n";
  for (std::size_t r = 0; r < times.size(); ++r) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) s << ",";
      const auto& c = cols[i];
      if (c == "instance") {
        s << id;
      } else if (c == "m") {
        s << 4;
      } else if (c == "n") {
        s << 10;
      } else if (c == "d_c") {
        s << 2;
      } else if (c == "kappa_lb") {
        s << 3;
      } else if (c == "pivot_rule") {
        s << "steepest";
      } else if (c == "inv_norm_method") {
        s << "exact";
      } else if (c == "required_gate_time") {
        s << format_number(times[r]);
      } else if (c == "flags") {
        s << (r == 0 ? flags : "");
      } else {
        s << 1;
      }
    }
    s << "\n";
  }
  return s.str();
}

}  // namespace

TEST(Bench, TinyLpSmoke) {
  const auto dir = scratch("bench_smoke");
  write_instance(generate(Family::IndependentSet, 8, 0.5, 2), dir / "in");
  const auto summary = bench(collect_instances({dir / "in"}), {}, dir / "out");
  EXPECT_EQ(summary.failed, 0u);
  const auto csv = hbtest::slurp(dir / "out" / "independent_set_n8_p0.5_s2.csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, std::string("# schema=") + kCsvSchema);
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 19), "instance,iteration,");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_GE(rows, 1u);
  const auto manifest = nlohmann::json::parse(hbtest::slurp(dir / "out" / "manifest.json"));
  EXPECT_EQ(manifest["csv_schema"], kCsvSchema);
  EXPECT_EQ(manifest["instances"].size(), 1u);
  fs::remove_all(dir);
}

TEST(Bench, RecordsCarryBounds) {
  const auto inst = generate(Family::IndependentSet, 12, 0.3, 5);
  const auto res = bench_lp(inst.id, inst.lp, {});
  ASSERT_TRUE(res.ok);
  ASSERT_FALSE(res.records.empty());
  for (const auto& r : res.records) {
    EXPECT_EQ(r.bound.total,
              r.bound.is_optimal + r.bound.find_column + r.bound.is_unbounded + r.bound.find_row);
    if (r.usable()) {
      EXPECT_TRUE(std::isfinite(r.required_gate_time));
      EXPECT_GT(r.bound.total, 0.0);
    }
  }
}

TEST(Bench, UnparsableSkipped) {
  const auto dir = scratch("bench_bad");
  write(dir / "bad.mps", "NAME\nROWS\n Q nope\nENDATA\n");
  write_instance(generate(Family::IndependentSet, 6, 0.5, 1), dir);
  std::ostringstream log;
  const auto summary = bench(collect_instances({dir}), {}, dir / "out", &log);
  EXPECT_EQ(summary.failed, 1u);
  EXPECT_NE(log.str().find("bad"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Report, UniformMean) {
  const auto dir = scratch("report_uniform");
  write(dir / "a.csv", csv_with("a", {2e-18, 2e-18, 2e-18}));
  const auto rep = build_report(dir);
  ASSERT_EQ(rep.instances.size(), 1u);
  EXPECT_DOUBLE_EQ(rep.instances[0].mean_required_gate_time, 2e-18);
  EXPECT_DOUBLE_EQ(rep.instances[0].mean_kappa_lb, 3.0);
  EXPECT_DOUBLE_EQ(rep.instances[0].mean_dc_over_m, 0.5);
  fs::remove_all(dir);
}

TEST(Report, AdvantageStep) {
  const auto dir = scratch("report_step");
  write(dir / "a.csv", csv_with("a", {1e-18}));
  write(dir / "b.csv", csv_with("b", {1e-14}));
  const auto rep = build_report(dir);
  const auto grid = advantage_grid();
  ASSERT_EQ(grid.size(), 181u);
  EXPECT_DOUBLE_EQ(grid.front(), 1e-24);
  for (const auto& pt : rep.advantage) {
    if (std::abs(std::log10(pt.gate_time) + 16.0) < 1e-9) {
      EXPECT_DOUBLE_EQ(pt.fraction, 0.5);
    }
    if (pt.gate_time < 1e-18) {
      EXPECT_DOUBLE_EQ(pt.fraction, 1.0);
    }
    if (pt.gate_time > 1e-14 * 1.0001) {
      EXPECT_DOUBLE_EQ(pt.fraction, 0.0);
    }
  }
  fs::remove_all(dir);
}

TEST(Report, BoundFlagsExcludeInfoFlagsDoNot) {
  const auto dir = scratch("report_flags");
  write(dir / "a.csv", csv_with("a", {1.0, 3.0}, "empty-sum"));
  write(dir / "b.csv", csv_with("b", {1.0, 3.0}, "c-norm-fallback"));
  write(dir / "c.csv", csv_with("c", {std::numeric_limits<double>::infinity()}));
  const auto rep = build_report(dir);
  EXPECT_DOUBLE_EQ(rep.instances[0].mean_required_gate_time, 3.0);
  EXPECT_EQ(rep.instances[0].excluded_rows, 1u);
  EXPECT_DOUBLE_EQ(rep.instances[1].mean_required_gate_time, 2.0);
  EXPECT_TRUE(std::isnan(rep.instances[2].mean_required_gate_time));
  EXPECT_EQ(rep.instances_without_mean, 1u);
  EXPECT_EQ(rep.excluded_rows, 2u);
  EXPECT_NE(report_json(rep).find("\"mean_required_gate_time\": null"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Report, GoldenJson) {
  const auto rep = build_report(hbtest::fixture("report_csv"));
  EXPECT_EQ(report_json(rep), hbtest::slurp(hbtest::fixture("report_golden.json")));
}

TEST(Report, EmptyDirectoryAndMissingColumn) {
  const auto dir = scratch("report_empty");
  EXPECT_THROW(build_report(dir), ReportError);
  write(dir / "x.csv", std::string("# schema=") + kCsvSchema + "\ninstance,m\nx,1\n");
  try {
    build_report(dir);
    FAIL();
  } catch (const ReportError& e) {
    EXPECT_NE(std::string(e.what()).find("'n'"), std::string::npos);
  }
  fs::remove_all(dir);
}

TEST(Fetch, EmptyManifestIsNoop) {
  const auto r = fetch(parse_fetch_manifest("# nothing\n\n"), scratch("fetch_empty") / "out");
  EXPECT_EQ(r.downloaded + r.failed + r.skipped, 0u);
}

TEST(Fetch, LocalFileAndBadChecksum) {
  const auto dir = scratch("fetch_local");
  const auto src = hbtest::fixture("small.mps");
  const auto sum = sha256_file(src);
  const std::string good = "file://" + src.string() + " " + sum + "\n";
  const std::string bad = "file://" + src.string() + " " + std::string(64, '0') + " other.mps\n";
  auto r = fetch(parse_fetch_manifest(good + bad), dir);
  EXPECT_EQ(r.downloaded, 1u);
  EXPECT_EQ(r.failed, 1u);
  EXPECT_TRUE(fs::exists(dir / "small.mps"));
  EXPECT_FALSE(fs::exists(dir / "other.mps"));
  EXPECT_FALSE(fs::exists(dir / "other.mps.part"));
  EXPECT_EQ(sha256_file(dir / "small.mps"), sum);
  r = fetch(parse_fetch_manifest(good), dir);
  EXPECT_EQ(r.skipped, 1u);
  EXPECT_THROW(parse_fetch_manifest("http://x/y.mps nothex\n"), std::runtime_error);
  fs::remove_all(dir);
}

TEST(Fetch, KnownDigest) {
  const auto dir = scratch("fetch_digest");
  write(dir / "abc", "abc");
  EXPECT_EQ(sha256_file(dir / "abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  fs::remove_all(dir);
}
