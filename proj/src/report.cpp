#include "hybridbench/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unordered_map>

#include "hybridbench/bench.hpp"

namespace hybridbench {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

double to_double(const std::string& s, const std::filesystem::path& file) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw ReportError(file.string() + ": bad number '" + s + "'");
  return v;
}

// A flag excludes a row only if it is a bound flag; informational flags do not.
bool has_bound_flag(const std::string& flags) {
  std::size_t start = 0;
  while (start <= flags.size()) {
    std::size_t bar = flags.find('|', start);
    if (bar == std::string::npos) bar = flags.size();
    const std::string f = flags.substr(start, bar - start);
    if (!f.empty() && f != kFlagCNormFallback && f != kFlagInverseEstimate &&
        f != kFlagInverseUnavailable) {
      return true;
    }
    start = bar + 1;
  }
  return false;
}

nlohmann::ordered_json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

std::vector<double> advantage_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 180; ++i) g.push_back(std::pow(10.0, -24.0 + i / 10.0));
  return g;
}

InstanceAggregate aggregate_csv(const std::filesystem::path& csv) {
  std::ifstream in(csv, std::ios::binary);
  if (!in) throw ReportError("cannot open " + csv.string());
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    header = split_csv(line);
    break;
  }
  if (header.empty()) throw ReportError(csv.string() + ": missing header");
  std::unordered_map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* need : {"instance", "m", "n", "d_c", "kappa_lb", "pivot_rule",
                                  "required_gate_time", "flags"}) {
    if (!col.count(need)) throw ReportError(csv.string() + ": missing column '" + std::string(need) + "'");
  }

  InstanceAggregate agg;
  agg.id = csv.stem().string();
  double sum_time = 0.0, sum_kappa = 0.0, sum_dc = 0.0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_csv(line);
    if (f.size() != header.size()) throw ReportError(csv.string() + ": ragged row");
    if (agg.rows == 0) {
      agg.id = f[col["instance"]];
      agg.m = static_cast<std::size_t>(to_double(f[col["m"]], csv));
      agg.n = static_cast<std::size_t>(to_double(f[col["n"]], csv));
      agg.pivot_rule = f[col["pivot_rule"]];
    }
    ++agg.rows;
    const double m = to_double(f[col["m"]], csv);
    sum_kappa += to_double(f[col["kappa_lb"]], csv);
    sum_dc += m > 0 ? to_double(f[col["d_c"]], csv) / m : 0.0;
    const double rgt = to_double(f[col["required_gate_time"]], csv);
    if (has_bound_flag(f[col["flags"]]) || !std::isfinite(rgt)) {
      ++agg.excluded_rows;
    } else {
      ++agg.used_rows;
      sum_time += rgt;
    }
  }
  agg.min_mn = std::min(agg.m, agg.n);
  agg.mean_required_gate_time =
      agg.used_rows ? sum_time / static_cast<double>(agg.used_rows)
                    : std::numeric_limits<double>::quiet_NaN();
  agg.mean_kappa_lb = agg.rows ? sum_kappa / static_cast<double>(agg.rows)
                               : std::numeric_limits<double>::quiet_NaN();
  agg.mean_dc_over_m = agg.rows ? sum_dc / static_cast<double>(agg.rows)
                                : std::numeric_limits<double>::quiet_NaN();
  return agg;
}

std::vector<AdvantagePoint> advantage_curve(const std::vector<InstanceAggregate>& instances,
                                            const std::vector<double>& grid) {
  std::vector<double> means;
  for (const auto& inst : instances) {
    if (std::isfinite(inst.mean_required_gate_time)) means.push_back(inst.mean_required_gate_time);
  }
  std::vector<AdvantagePoint> out;
  for (double g : grid) {
    std::size_t hit = 0;
    for (double v : means) hit += v >= g ? 1 : 0;
    const double frac = means.empty() ? 0.0 : static_cast<double>(hit) / means.size();
    out.push_back({g, frac});
  }
  return out;
}

AggregateReport build_report(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ReportError(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> csvs;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
    // Only per-iteration files; a report CSV written into the same directory is skipped.
    std::ifstream in(entry.path(), std::ios::binary);
    std::string first;
    std::getline(in, first);
    if (first.rfind(std::string("# schema=") + kCsvSchema, 0) == 0) csvs.push_back(entry.path());
  }
  if (csvs.empty()) throw ReportError("no CSV files in " + dir.string());
  AggregateReport rep;
  for (const auto& p : csvs) rep.instances.push_back(aggregate_csv(p));
  std::sort(rep.instances.begin(), rep.instances.end(),
            [](const InstanceAggregate& a, const InstanceAggregate& b) { return a.id < b.id; });
  for (const auto& inst : rep.instances) {
    rep.excluded_rows += inst.excluded_rows;
    if (!std::isfinite(inst.mean_required_gate_time)) ++rep.instances_without_mean;
  }
  rep.advantage = advantage_curve(rep.instances, advantage_grid());
  return rep;
}

std::string report_json(const AggregateReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["reference_gate_time"] = report.reference_gate_time;
  j["instance_count"] = report.instances.size();
  j["instances_without_mean"] = report.instances_without_mean;
  j["excluded_rows"] = report.excluded_rows;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& inst : report.instances) {
    nlohmann::ordered_json item;
    item["id"] = inst.id;
    item["m"] = inst.m;
    item["n"] = inst.n;
    item["min_mn"] = inst.min_mn;
    item["pivot_rule"] = inst.pivot_rule;
    item["rows"] = inst.rows;
    item["used_rows"] = inst.used_rows;
    item["excluded_rows"] = inst.excluded_rows;
    item["mean_required_gate_time"] = number_or_null(inst.mean_required_gate_time);
    item["mean_kappa_lb"] = number_or_null(inst.mean_kappa_lb);
    item["mean_dc_over_m"] = number_or_null(inst.mean_dc_over_m);
    list.push_back(std::move(item));
  }
  j["instances"] = std::move(list);
  nlohmann::ordered_json curve = nlohmann::ordered_json::array();
  for (const auto& pt : report.advantage) {
    curve.push_back({{"gate_time", pt.gate_time}, {"fraction", pt.fraction}});
  }
  j["advantage_curve"] = std::move(curve);
  return j.dump(2) + "\n";
}

std::string report_csv(const AggregateReport& report) {
  std::ostringstream out;
  out << "# schema=" << kReportSchema << "\n";
  out << "id,m,n,min_mn,pivot_rule,rows,used_rows,excluded_rows,mean_required_gate_time,"
         "mean_kappa_lb,mean_dc_over_m\n";
  for (const auto& i : report.instances) {
    out << i.id << ',' << i.m << ',' << i.n << ',' << i.min_mn << ',' << i.pivot_rule << ','
        << i.rows << ',' << i.used_rows << ',' << i.excluded_rows << ','
        << format_number(i.mean_required_gate_time) << ',' << format_number(i.mean_kappa_lb)
        << ',' << format_number(i.mean_dc_over_m) << '\n';
  }
  return out.str();
}

}  // namespace hybridbench
