#include "hybridbench/bench.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <ostream>
#include <thread>

#include "hybridbench/mps.hpp"

namespace hybridbench {

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "instance",          "iteration",         "n",
      "m",                 "nnz_basis",         "d_c",
      "d_r",               "d",                 "basis_max_abs",
      "norm1_basis",       "norm1_basis_inv",   "inv_norm_method",
      "kappa1",            "kappa_lb",          "t_enter",
      "max_abs_reduced_cost", "c_max",          "t_u",
      "u_norm2",           "norm1_hat_lb",      "norm_max_hat_lb",
      "pivot_rule",        "is_optimal_lb",     "find_column_lb",
      "is_unbounded_lb",   "find_row_lb",       "total_lb",
      "classical_iter_seconds", "required_gate_time", "flags"};
  return cols;
}

std::string BenchRecord::flags() const {
  std::string out = qcost::flag_names(bound.flags);
  auto add = [&](const char* name) {
    if (!out.empty()) out += '|';
    out += name;
  };
  if (metrics.c_norm_fallback) add(kFlagCNormFallback);
  if (metrics.inverse_method == InverseNormMethod::Estimate) add(kFlagInverseEstimate);
  if (metrics.inverse_method == InverseNormMethod::Unavailable) add(kFlagInverseUnavailable);
  return out;
}

bool BenchRecord::usable() const { return bound.flags == 0 && std::isfinite(required_gate_time); }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

class BoundRecorder : public SimplexObserver {
 public:
  BoundRecorder(std::string id, const BenchOptions& opt) : id_(std::move(id)), opt_(opt) {}

  void before_pivot(const IterationView& view) override {
    BenchRecord rec;
    rec.instance = id_;
    rec.metrics = collect(view, opt_.exact_inverse_limit);
    rec.normalized = normalized_bounds(rec.metrics);
    rec.rule = view.rule;
    records_.push_back(std::move(rec));
  }

  void after_pivot(std::size_t iteration, double seconds) override {
    if (!records_.empty() && records_.back().metrics.iteration == iteration) {
      records_.back().metrics.classical_iter_seconds = seconds;
    }
  }

  std::vector<BenchRecord> finish() {
    // Bounds are evaluated after the solve so they never touch the timed path.
    qcost::BoundOptions bo;
    bo.eps = opt_.eps;
    bo.delta = opt_.delta;
    bo.costs = opt_.costs;
    bo.qster_start = opt_.qster_start;
    for (BenchRecord& rec : records_) {
      rec.bound = qcost::simplex_iter_lb(qcost::variant_for(rec.rule),
                                         qcost::inputs_from(rec.metrics), bo);
      rec.required_gate_time =
          qcost::required_gate_time(rec.metrics.classical_iter_seconds, rec.bound);
    }
    return std::move(records_);
  }

 private:
  std::string id_;
  const BenchOptions& opt_;
  std::vector<BenchRecord> records_;
};

void write_row(std::ostream& out, const BenchRecord& r) {
  const IterationMetrics& m = r.metrics;
  const std::string fields[] = {
      r.instance,
      std::to_string(m.iteration),
      std::to_string(m.n),
      std::to_string(m.m),
      std::to_string(m.nnz_basis),
      std::to_string(m.d_c),
      std::to_string(m.d_r),
      std::to_string(m.d),
      format_number(m.basis_max_abs),
      format_number(m.norm1_basis),
      format_number(m.norm1_basis_inv),
      to_string(m.inverse_method),
      format_number(m.kappa1),
      format_number(m.kappa_lb),
      std::to_string(m.t_enter),
      format_number(m.max_abs_reduced_cost),
      format_number(m.c_max),
      std::to_string(m.t_u),
      format_number(m.u_norm2),
      format_number(r.normalized.norm1_hat_lb),
      format_number(r.normalized.norm_max_hat_lb),
      to_string(r.rule),
      format_number(r.bound.is_optimal),
      format_number(r.bound.find_column),
      format_number(r.bound.is_unbounded),
      format_number(r.bound.find_row),
      format_number(r.bound.total),
      format_number(m.classical_iter_seconds),
      format_number(r.required_gate_time),
      r.flags()};
  for (std::size_t i = 0; i < std::size(fields); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << '\n';
}

std::string host_name() {
  char buf[256] = {};
  if (gethostname(buf, sizeof buf - 1) != 0) return "unknown";
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "# schema=" << kCsvSchema << '\n';
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out << ',';
    out << cols[i];
  }
  out << '\n';
  for (const BenchRecord& r : records) write_row(out, r);
}

InstanceResult bench_lp(const std::string& id, const LinearProgram& lp, const BenchOptions& opt) {
  InstanceResult res;
  res.id = id;
  res.rows = lp.num_rows();
  res.cols = lp.num_cols();
  try {
    const StandardFormLP sf = standardize(lp);
    BoundRecorder recorder(id, opt);
    SimplexOptions so;
    so.rule = opt.rule;
    so.eps_opt = opt.eps_opt;
    so.limits.max_iterations = opt.max_iterations;
    so.limits.time_limit_seconds = opt.time_limit_seconds;
    so.observer = &recorder;
    RevisedSimplex solver(sf, so);
    res.outcome = solver.solve();
    res.records = recorder.finish();
    res.ok = true;
  } catch (const std::exception& e) {
    res.error = e.what();
  }
  return res;
}

std::string instance_id(const std::filesystem::path& file) {
  std::string name = file.filename().string();
  for (const char* ext : {".gz", ".mps", ".MPS"}) {
    const std::string e(ext);
    if (name.size() > e.size() && name.compare(name.size() - e.size(), e.size(), e) == 0) {
      name.resize(name.size() - e.size());
    }
  }
  return name;
}

std::vector<std::filesystem::path> collect_instances(
    const std::vector<std::filesystem::path>& in) {
  std::vector<std::filesystem::path> out;
  for (const auto& p : in) {
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> found;
      for (const auto& entry : std::filesystem::directory_iterator(p)) {
        const std::string name = entry.path().filename().string();
        auto ends = [&](const std::string& suffix) {
          return name.size() >= suffix.size() &&
                 name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
        };
        if (entry.is_regular_file() &&
            (ends(".mps") || ends(".MPS") || ends(".mps.gz") || ends(".MPS.gz"))) {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

BenchSummary bench(const std::vector<std::filesystem::path>& files, const BenchOptions& opt,
                   const std::filesystem::path& out_dir, std::ostream* log) {
  std::filesystem::create_directories(out_dir);
  BenchSummary summary;
  summary.instances.resize(files.size());
  std::mutex log_mutex;
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      InstanceResult& res = summary.instances[i];
      const std::string id = instance_id(files[i]);
      try {
        const LinearProgram lp = to_lp(read_mps_file(files[i]));
        res = bench_lp(id, lp, opt);
      } catch (const std::exception& e) {
        res.id = id;
        res.error = e.what();
      }
      res.source = files[i].string();
      if (res.ok) {
        std::ofstream out(out_dir / (id + ".csv"), std::ios::binary);
        write_csv(out, res.records);
        if (!out) {
          res.ok = false;
          res.error = "cannot write CSV";
        }
      }
      if (log) {
        std::lock_guard lock(log_mutex);
        if (res.ok) {
          *log << id << ": " << to_string(res.outcome.status) << ", "
               << res.records.size() << " logged iterations\n";
        } else {
          *log << id << ": skipped (" << res.error << ")\n";
        }
      }
      res.records.clear();
      res.records.shrink_to_fit();
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(opt.jobs, files.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  nlohmann::ordered_json manifest;
  manifest["tool"] = "hybridbench";
  manifest["version"] = HYBRIDBENCH_VERSION;
  manifest["csv_schema"] = kCsvSchema;
  manifest["parameters"] = {
      {"pivot_rule", to_string(opt.rule.kind)},
      {"seed", opt.rule.seed},
      {"eps", opt.eps},
      {"delta", opt.delta},
      {"eps_opt", opt.eps_opt},
      {"time_limit_seconds", opt.time_limit_seconds},
      {"max_iterations", opt.max_iterations},
      {"exact_inverse_limit", opt.exact_inverse_limit},
      {"qster_sum_start", opt.qster_start == qcost::QminSumStart::FromOne ? 1 : 0},
      {"gate_costs", {{"c1", opt.costs.c1}, {"c2", opt.costs.c2}, {"ct", opt.costs.ct}}}};
  manifest["host"] = {{"hostname", host_name()},
                      {"hardware_threads", std::thread::hardware_concurrency()}};
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const InstanceResult& res : summary.instances) {
    nlohmann::ordered_json item;
    item["id"] = res.id;
    item["source"] = res.source;
    if (res.ok) {
      item["status"] = to_string(res.outcome.status);
      item["rows"] = res.rows;
      item["cols"] = res.cols;
      item["iterations"] = res.outcome.iterations;
      item["phase2_iterations"] = res.outcome.phase2_iterations;
      if (std::isfinite(res.outcome.objective)) item["objective"] = res.outcome.objective;
      if (!res.outcome.diagnostic.empty()) item["diagnostic"] = res.outcome.diagnostic;
    } else {
      item["status"] = "skipped";
      item["error"] = res.error;
      ++summary.failed;
    }
    list.push_back(std::move(item));
  }
  manifest["instances"] = std::move(list);
  std::ofstream out(out_dir / "manifest.json", std::ios::binary);
  out << manifest.dump(2) << '\n';
  return summary;
}

}  // namespace hybridbench
