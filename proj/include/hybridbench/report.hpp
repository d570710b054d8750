#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybridbench {

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kReportSchema = "hybridbench-report/1";

struct InstanceAggregate {
  std::string id;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t min_mn = 0;
  std::string pivot_rule;
  std::size_t rows = 0;
  std::size_t used_rows = 0;
  std::size_t excluded_rows = 0;
  double mean_required_gate_time = 0.0;  // NaN when no usable rows
  double mean_kappa_lb = 0.0;
  double mean_dc_over_m = 0.0;
};

struct AdvantagePoint {
  double gate_time = 0.0;
  double fraction = 0.0;  // instances whose mean required gate time >= gate_time
};

struct AggregateReport {
  double reference_gate_time = 6.5e-9;
  std::vector<InstanceAggregate> instances;  // sorted by id
  std::size_t excluded_rows = 0;
  std::size_t instances_without_mean = 0;
  std::vector<AdvantagePoint> advantage;
};

/// g_i = 10^(-24 + i/10), i = 0..180.
std::vector<double> advantage_grid();

/// Aggregates one CSV's rows. Rows with a bound flag or non-finite required
/// gate time are excluded from the gate-time mean but counted.
InstanceAggregate aggregate_csv(const std::filesystem::path& csv);

/// Reads every *.csv in `dir`. Throws ReportError when there is none.
AggregateReport build_report(const std::filesystem::path& dir);
/// Builds the curve from per-instance means.
std::vector<AdvantagePoint> advantage_curve(const std::vector<InstanceAggregate>& instances,
                                            const std::vector<double>& grid);

/// Deterministic JSON (fixed key order, %.17g numbers, null for NaN).
std::string report_json(const AggregateReport& report);
/// One line per instance.
std::string report_csv(const AggregateReport& report);

}  // namespace hybridbench
