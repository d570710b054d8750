#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hybridbench/iter_metrics.hpp"
#include "hybridbench/lp_core.hpp"
#include "hybridbench/qcost.hpp"
#include "hybridbench/simplex.hpp"

namespace hybridbench {

inline constexpr const char* kCsvSchema = "hybridbench-iterations/1";
inline constexpr double kReferenceGateTime = 6.5e-9;

/// Column names of the per-instance CSV, in order.
const std::vector<std::string>& csv_columns();

/// Informational row flags; they do not exclude a row from averages.
inline constexpr const char* kFlagCNormFallback = "c-norm-fallback";
inline constexpr const char* kFlagInverseEstimate = "inverse-estimate";
inline constexpr const char* kFlagInverseUnavailable = "inverse-unavailable";

struct BenchRecord {
  std::string instance;
  IterationMetrics metrics;
  NormalizedBounds normalized;
  qcost::IterationBound bound;
  PivotRule::Kind rule = PivotRule::Kind::SteepestEdge;
  double required_gate_time = 0.0;

  /// Bound flags and informational flags joined with '|'.
  std::string flags() const;
  /// True when the row enters per-instance means.
  bool usable() const;
};

struct BenchOptions {
  PivotRule rule = PivotRule::steepest_edge();
  double eps = 1e-3;
  double delta = 1e-3;
  double eps_opt = 1e-3;
  double time_limit_seconds = 1800.0;
  std::size_t max_iterations = 10'000'000;
  std::size_t jobs = 1;
  std::size_t exact_inverse_limit = kExactInverseLimit;
  qcost::QminSumStart qster_start = qcost::QminSumStart::FromOne;
  qcost::GateCosts costs;
};

struct InstanceResult {
  std::string id;
  std::string source;
  bool ok = false;
  std::string error;
  SolveOutcome outcome;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BenchRecord> records;
};

/// Solve one LP with instrumentation and evaluate the bounds for every Phase-II iteration.
InstanceResult bench_lp(const std::string& id, const LinearProgram& lp, const BenchOptions& opt);

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::string format_number(double v);

struct BenchSummary {
  std::vector<InstanceResult> instances;  // records dropped after writing
  std::size_t failed = 0;
};

/// Expands directories to their *.mps / *.mps.gz files (sorted).
std::vector<std::filesystem::path> collect_instances(const std::vector<std::filesystem::path>& in);
std::string instance_id(const std::filesystem::path& file);

/// Runs every file, writing <out>/<id>.csv and <out>/manifest.json.
BenchSummary bench(const std::vector<std::filesystem::path>& files, const BenchOptions& opt,
                   const std::filesystem::path& out_dir, std::ostream* log = nullptr);

}  // namespace hybridbench
