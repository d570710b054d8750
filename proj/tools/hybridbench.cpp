// hybridbench command-line interface.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "hybridbench/bench.hpp"
#include "hybridbench/fetch.hpp"
#include "hybridbench/instance_gen.hpp"
#include "hybridbench/mps.hpp"
#include "hybridbench/qcost.hpp"
#include "hybridbench/report.hpp"
#include "hybridbench/search_oracle.hpp"
#include "hybridbench/simplex.hpp"

namespace hb = hybridbench;
namespace qc = hybridbench::qcost;

namespace {

struct Common {
  std::string pivot = "steepest";
  double eps = 1e-3;
  double delta = 1e-3;
  double eps_opt = 1e-3;
  std::uint64_t seed = 1;
  double time_limit = 1800.0;
  std::string out;
  std::string format = "json";
};

void add_solver_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--pivot", c.pivot, "Pivot rule")
      ->check(CLI::IsMember({"dantzig", "steepest", "random"}))
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Seed for the random pivot rule")->capture_default_str();
  cmd->add_option("--eps-opt", c.eps_opt, "Reduced-cost optimality tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--time-limit", c.time_limit, "Per-instance time limit in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_precision_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--eps", c.eps, "Precision eps of the quantum subroutines")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--delta", c.delta, "Precision delta of the quantum subroutines")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
}

hb::PivotRule rule_of(const Common& c) {
  hb::PivotRule r;
  r.kind = *hb::parse_pivot_kind(c.pivot);
  r.seed = c.seed;
  return r;
}

std::string num(double v) { return hb::format_number(v); }

void emit(std::ostream& out, const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

// ---------------------------------------------------------------------------

int run_gen(const std::vector<std::string>& families, const std::vector<std::size_t>& sizes,
            const std::vector<double>& probs, std::uint64_t seed, std::size_t count,
            const std::string& out) {
  std::vector<hb::Family> fams;
  for (const auto& name : families) {
    if (name == "all") {
      fams = {hb::Family::VertexCover, hb::Family::IndependentSet, hb::Family::MaxClique,
              hb::Family::MaxFlow};
      break;
    }
    hb::Family f;
    hb::parse_family(name, f);
    fams.push_back(f);
  }
  std::size_t written = 0;
  for (hb::Family f : fams) {
    for (std::size_t n : sizes) {
      for (double p : probs) {
        for (std::size_t k = 0; k < count; ++k) {
          const auto inst = hb::generate(f, n, p, seed + k);
          hb::write_instance(inst, out);
          ++written;
        }
      }
    }
  }
  std::cout << "wrote " << written << " instances to " << out << "\n";
  return 0;
}

int run_solve(const std::string& file, const Common& c) {
  const hb::LinearProgram lp = hb::to_lp(hb::read_mps_file(file));
  hb::SimplexOptions so;
  so.rule = rule_of(c);
  so.eps_opt = c.eps_opt;
  so.limits.time_limit_seconds = c.time_limit;
  const hb::SolveOutcome res = hb::solve_lp(lp, so);
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["instance"] = hb::instance_id(file);
    j["status"] = hb::to_string(res.status);
    if (std::isfinite(res.objective)) j["objective"] = res.objective;
    j["iterations"] = res.iterations;
    j["phase2_iterations"] = res.phase2_iterations;
    if (!res.diagnostic.empty()) j["diagnostic"] = res.diagnostic;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "instance,status,objective,iterations,phase2_iterations\n"
              << hb::instance_id(file) << ',' << hb::to_string(res.status) << ','
              << num(res.objective) << ',' << res.iterations << ',' << res.phase2_iterations
              << "\n";
  }
  return res.status == hb::SolveStatus::NumericalFailure ? 1 : 0;
}

int run_bench(const std::vector<std::string>& inputs, const Common& c, std::size_t jobs,
              bool qster_from_zero) {
  std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
  const auto files = hb::collect_instances(paths);
  if (files.empty()) {
    std::cerr << "bench: no instance files found\n";
    return 1;
  }
  hb::BenchOptions opt;
  opt.rule = rule_of(c);
  opt.eps = c.eps;
  opt.delta = c.delta;
  opt.eps_opt = c.eps_opt;
  opt.time_limit_seconds = c.time_limit;
  opt.jobs = jobs;
  if (qster_from_zero) opt.qster_start = qc::QminSumStart::FromZero;
  const std::string out = c.out.empty() ? "bench_out" : c.out;
  const auto summary = hb::bench(files, opt, out, &std::cerr);
  std::cout << "benchmarked " << (files.size() - summary.failed) << "/" << files.size()
            << " instances into " << out << "\n";
  return summary.failed == files.size() ? 1 : 0;
}

int run_report(const std::string& dir, const Common& c) {
  const hb::AggregateReport rep = hb::build_report(dir);
  emit(std::cout, c.format == "csv" ? hb::report_csv(rep) : hb::report_json(rep), c.out);
  return 0;
}

int run_fetch(const std::string& manifest, const std::string& out) {
  std::ifstream in(manifest, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read manifest " + manifest);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto res = hb::fetch(hb::parse_fetch_manifest(ss.str()), out);
  for (const auto& msg : res.messages) std::cerr << msg << "\n";
  std::cout << "downloaded " << res.downloaded << ", skipped " << res.skipped << ", failed "
            << res.failed << "\n";
  return res.failed ? 1 : 0;
}

struct EvalArgs {
  std::string formula;
  double norm1 = 1.0, norm_max = 1.0, d = 1.0, kappa = 1.0, time_t = 1.0;
  double p = 0.5, cost = 1.0, cost_v = 0.0;
  std::size_t size = 2, marked = 0, n = 0, m = 0, count = 1, t_enter = 0, t_u = 0;
  double c_max = 1.0, u_norm = 1.0;
  std::string variant = "qster";
  std::string rounding = "ceil";
  bool from_zero = false;
  double c1 = 1.0, c2 = 1.0, ct = 1.0;
};

int run_eval(const EvalArgs& a, const Common& c) {
  const qc::GateCosts costs{a.c1, a.c2, a.ct};
  const qc::QlsMatrix mat{a.norm1, a.norm_max, a.d, a.kappa};
  const auto start = a.from_zero ? qc::QminSumStart::FromZero : qc::QminSumStart::FromOne;
  qc::Bound b;
  const std::string& f = a.formula;
  if (f == "qls") {
    b = qc::qls_lb(mat.at(c.eps), costs);
  } else if (f == "ham_sim") {
    b = qc::ham_sim_lb(a.norm1, a.norm_max, a.d, a.time_t, c.eps, costs);
  } else if (f == "n_qsearch") {
    b = qc::n_qsearch(a.size, a.marked);
  } else if (f == "qmin") {
    b = qc::qmin_expected_queries(a.size, c.eps, start);
  } else if (f == "qpe") {
    b = qc::qpe_cost_lb(c.eps, c.delta, a.cost, costs);
  } else if (f == "qae") {
    b = qc::qae_cost_lb(c.eps, c.delta, a.cost, costs,
                        a.rounding == "continuous" ? qc::QaeRounding::Continuous
                                                   : qc::QaeRounding::Ceil);
  } else if (f == "ctrl") {
    b = qc::ctrl_cost(a.count, a.cost, costs);
  } else if (f == "lcu") {
    b = qc::lcu_cost(a.count, a.cost, costs);
  } else if (f == "qaa") {
    b = qc::qaa_cost(a.p, a.count, a.cost_v, a.cost, costs);
  } else if (f == "oaa") {
    b = qc::oaa_cost(a.p, a.count, a.cost, costs);
  } else if (f == "signestnfn") {
    b = qc::signestnfn_lb(c.eps, a.cost);
  } else if (f == "signestnfp") {
    b = qc::signestnfp_lb(c.eps, a.cost);
  } else if (f == "canenternfn") {
    b = qc::canenternfn_lb(c.eps, mat.at(c.eps), costs);
  } else if (f == "canenternfp") {
    b = qc::canenternfp_lb(c.eps, mat.at(c.eps), costs);
  } else if (f == "interfere") {
    b = qc::interfere_lb(a.cost, a.cost_v);
  } else if (f == "is_optimal") {
    b = qc::is_optimal_lb(a.n, a.m, c.eps, mat, costs);
  } else if (f == "is_unbounded") {
    b = qc::is_unbounded_lb(a.m, a.t_u, c.delta, mat, costs);
  } else if (f == "find_row") {
    b = qc::find_row_lb(a.m, a.u_norm, c.delta, mat, costs);
  } else if (f == "find_column" || f == "iteration") {
    qc::IterationInputs in{a.n, a.m, a.t_enter, a.c_max, a.t_u, a.u_norm, mat};
    qc::BoundOptions bo{c.eps, c.delta, costs, start};
    const auto v = a.variant == "random"  ? qc::FindColumnVariant::Random
                   : a.variant == "qdanr" ? qc::FindColumnVariant::QDanR
                                          : qc::FindColumnVariant::QStER;
    if (f == "find_column") {
      b = qc::find_column_lb(v, in, bo);
    } else {
      const auto it = qc::simplex_iter_lb(v, in, bo);
      b = {it.total, it.flags};
    }
  }
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["formula"] = f;
    j["value"] = b.value;
    j["flags"] = qc::flag_names(b.flags);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << num(b.value);
    if (b.flags) std::cout << " [" << qc::flag_names(b.flags) << "]";
    std::cout << "\n";
  }
  return 0;
}

int run_verify(const std::string& what, std::size_t size, std::size_t marked,
               const hb::McConfig& cfg) {
  hb::McResult mc;
  double formula;
  if (what == "qsearch") {
    mc = hb::mc_qsearch(size, marked, cfg);
    formula = qc::n_qsearch(size, marked).value;
  } else {
    mc = hb::mc_qmin(size, cfg);
    formula = qc::qmin_sum(size).value;
  }
  nlohmann::ordered_json j;
  j["formula"] = what == "qsearch" ? "n_qsearch" : "qmin_sum";
  j["size"] = size;
  if (what == "qsearch") j["marked"] = marked;
  j["formula_value"] = formula;
  j["mc_mean"] = mc.mean;
  j["std_error"] = mc.std_error;
  if (mc.std_error > 0) {
    j["z_score"] = (mc.mean - formula) / mc.std_error;
  } else {
    j["z_score"] = mc.mean == formula ? 0.0 : HUGE_VAL;
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid benchmarking of simplex iterations against quantum gate-count bounds"};
  app.set_version_flag("--version", HYBRIDBENCH_VERSION);
  app.require_subcommand(1);
  Common c;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate graph LP instances as MPS + JSON sidecar");
  std::vector<std::string> families{"all"};
  std::vector<std::size_t> sizes{50};
  std::vector<double> probs{0.1, 0.3, 0.5};
  std::size_t count = 1;
  gen->add_option("--family", families, "vertex_cover|independent_set|max_clique|max_flow|all")
      ->check(CLI::IsMember({"vertex_cover", "independent_set", "max_clique", "max_flow", "all"}))
      ->capture_default_str();
  gen->add_option("--n", sizes, "Vertex counts")->capture_default_str();
  gen->add_option("--p", probs, "Edge probabilities")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  gen->add_option("--seed", c.seed, "First seed")->capture_default_str();
  gen->add_option("--count", count, "Instances per (family, n, p)")->capture_default_str();
  gen->add_option("--out", c.out, "Output directory")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Solve one MPS file");
  std::string solve_file;
  solve->add_option("file", solve_file, "MPS file (.mps or .mps.gz)")->required();
  add_solver_flags(solve, c);
  solve->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "Instrumented solves with per-iteration bounds");
  std::vector<std::string> inputs;
  std::size_t jobs = 1;
  bool qster_from_zero = false;
  bench->add_option("inputs", inputs, "MPS files or directories")->required();
  add_solver_flags(bench, c);
  add_precision_flags(bench, c);
  bench->add_option("--out", c.out, "Output directory")->capture_default_str();
  bench->add_option("--jobs", jobs, "Instances solved in parallel")->capture_default_str();
  bench->add_flag("--qster-sum-from-zero", qster_from_zero,
                  "Start the QStER minimum-finding sum at t = 0");

  // report
  auto* report = app.add_subcommand("report", "Aggregate bench CSVs");
  std::string report_dir;
  report->add_option("dir", report_dir, "Directory with bench CSVs")->required();
  report->add_option("--out", c.out, "Output file (default stdout)");
  report->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // fetch
  auto* fetch = app.add_subcommand("fetch", "Download instances listed in a checksum manifest");
  std::string manifest;
  fetch->add_option("manifest", manifest, "Lines of '<url> <sha256> [name]'")->required();
  fetch->add_option("--out", c.out, "Output directory")->required();

  // qcost
  auto* qcost = app.add_subcommand("qcost", "Evaluate or verify bound formulas");
  qcost->require_subcommand(1);
  auto* eval = qcost->add_subcommand("eval", "Evaluate one formula");
  EvalArgs ea;
  eval->add_option("formula", ea.formula, "Formula name")
      ->required()
      ->check(CLI::IsMember({"qls", "ham_sim", "n_qsearch", "qmin", "qpe", "qae", "ctrl", "lcu",
                             "qaa", "oaa", "signestnfn", "signestnfp", "canenternfn",
                             "canenternfp", "interfere", "is_optimal", "find_column",
                             "is_unbounded", "find_row", "iteration"}));
  add_precision_flags(eval, c);
  eval->add_option("--norm1", ea.norm1, "Lower bound on ||A||_1");
  eval->add_option("--norm-max", ea.norm_max, "Lower bound on ||A||_max");
  eval->add_option("--d", ea.d, "Sparsity d");
  eval->add_option("--kappa", ea.kappa, "Condition number");
  eval->add_option("--time", ea.time_t, "Simulation time t (ham_sim)");
  eval->add_option("--size", ea.size, "Search space size (n_qsearch, qmin)");
  eval->add_option("--marked", ea.marked, "Marked items (n_qsearch)");
  eval->add_option("--n", ea.n, "Columns n");
  eval->add_option("--m", ea.m, "Rows m");
  eval->add_option("--t-enter", ea.t_enter, "Improving columns");
  eval->add_option("--t-u", ea.t_u, "Positive components of u");
  eval->add_option("--c-max", ea.c_max, "Normalized max nonbasic |c|");
  eval->add_option("--u-norm", ea.u_norm, "||B^-1 A_k||_2");
  eval->add_option("--variant", ea.variant, "FindColumn variant")
      ->check(CLI::IsMember({"random", "qster", "qdanr"}));
  eval->add_option("--rounding", ea.rounding, "QAE register rounding")
      ->check(CLI::IsMember({"ceil", "continuous"}));
  eval->add_option("--cost", ea.cost, "Cost of U / A");
  eval->add_option("--cost-v", ea.cost_v, "Cost of V / chi");
  eval->add_option("--count", ea.count, "Controls / LCU terms / qubits / mu");
  eval->add_option("--p", ea.p, "Success probability (qaa, oaa)");
  eval->add_flag("--sum-from-zero", ea.from_zero, "QMin sum starts at 0");
  eval->add_option("--c1", ea.c1, "One-qubit gate cost");
  eval->add_option("--c2", ea.c2, "Two-qubit gate cost");
  eval->add_option("--ct", ea.ct, "Toffoli cost");
  std::string eval_format = "text";
  eval->add_option("--format", eval_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  auto* verify = qcost->add_subcommand("verify", "Compare a formula with Monte Carlo");
  std::string what;
  std::size_t v_size = 16, v_marked = 0;
  hb::McConfig mc;
  verify->add_option("what", what, "qsearch|qmin")
      ->required()
      ->check(CLI::IsMember({"qsearch", "qmin"}));
  verify->add_option("--size", v_size, "Search space size")->check(CLI::Range(2, 1 << 24));
  verify->add_option("--marked", v_marked, "Marked items (qsearch)");
  verify->add_option("--trials", mc.trials, "Monte-Carlo trials")->capture_default_str();
  verify->add_option("--seed", mc.seed, "Seed")->capture_default_str();
  verify->add_option("--threads", mc.threads, "Worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*gen) return run_gen(families, sizes, probs, c.seed, count, c.out);
    if (*solve) return run_solve(solve_file, c);
    if (*bench) return run_bench(inputs, c, jobs, qster_from_zero);
    if (*report) return run_report(report_dir, c);
    if (*fetch) return run_fetch(manifest, c.out);
    if (*eval) {
      c.format = eval_format;
      return run_eval(ea, c);
    }
    if (*verify) {
      if (what == "qsearch" && v_marked > v_size) {
        std::cerr << "error: --marked exceeds --size\n";
        return 2;
      }
      return run_verify(what, v_size, v_marked, mc);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
