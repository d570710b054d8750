#include "hybridbench/simplex.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace hybridbench {
namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

double inf_norm(std::span<const double> v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

}  // namespace

const char* to_string(PivotRule::Kind kind) {
  switch (kind) {
    case PivotRule::Kind::Dantzig: return "dantzig";
    case PivotRule::Kind::SteepestEdge: return "steepest";
    case PivotRule::Kind::Random: return "random";
  }
  return "?";
}

std::optional<PivotRule::Kind> parse_pivot_kind(const std::string& name) {
  if (name == "dantzig") return PivotRule::Kind::Dantzig;
  if (name == "steepest" || name == "steepest-edge") return PivotRule::Kind::SteepestEdge;
  if (name == "random") return PivotRule::Kind::Random;
  return std::nullopt;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::IterationLimit: return "iteration-limit";
    case SolveStatus::TimeLimit: return "time-limit";
    case SolveStatus::NumericalFailure: return "numerical-failure";
  }
  return "?";
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t range = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % range);
}

std::optional<std::size_t> choose_column(std::span<const double> reduced, PivotRule::Kind rule,
                                         double tol,
                                         const std::function<double(std::size_t)>& edge_norm,
                                         std::mt19937_64& rng) {
  std::optional<std::size_t> best;
  switch (rule) {
    case PivotRule::Kind::Dantzig:
      for (std::size_t i = 0; i < reduced.size(); ++i) {
        if (reduced[i] < -tol && (!best || reduced[i] < reduced[*best])) best = i;
      }
      return best;
    case PivotRule::Kind::SteepestEdge: {
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < reduced.size(); ++i) {
        if (reduced[i] >= -tol) continue;
        const double norm = edge_norm(i);
        const double ratio = norm > 0.0 ? reduced[i] / norm : reduced[i];
        if (!best || ratio < best_ratio) {
          best = i;
          best_ratio = ratio;
        }
      }
      return best;
    }
    case PivotRule::Kind::Random: {
      std::vector<std::size_t> improving;
      for (std::size_t i = 0; i < reduced.size(); ++i) {
        if (reduced[i] < -tol) improving.push_back(i);
      }
      if (improving.empty()) return std::nullopt;
      return improving[uniform_index(rng, improving.size())];
    }
  }
  return best;
}

std::optional<RatioResult> ratio_test(std::span<const double> x_basic, std::span<const double> u,
                                      std::span<const std::size_t> basic_index) {
  std::optional<RatioResult> best;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > kPivotTolerance)) continue;
    const double ratio = std::max(x_basic[i], 0.0) / u[i];
    if (!best) {
      best = RatioResult{i, ratio};
      continue;
    }
    const double slack = 1e-12 * std::max(1.0, std::abs(best->theta));
    if (ratio < best->theta - slack) {
      best = RatioResult{i, ratio};
    } else if (ratio <= best->theta + slack && basic_index[i] < basic_index[best->row]) {
      best = RatioResult{i, std::min(ratio, best->theta)};
    }
  }
  return best;
}

RevisedSimplex::RevisedSimplex(const StandardFormLP& lp, SimplexOptions options)
    : lp_(lp), opt_(options), n_(lp.num_cols()), m_(lp.num_rows()), rng_(options.rule.seed) {
  // Crash basis: a +1 unit column per row where b_i >= 0, else a signed artificial.
  std::vector<std::size_t> unit(m_, StandardFormLP::npos);
  for (std::size_t j = 0; j < n_; ++j) {
    if (lp.A.column_nnz(j) != 1) continue;
    const std::size_t r = lp.A.column_rows(j)[0];
    if (lp.A.column_values(j)[0] == 1.0 && lp.b[r] >= 0.0 && unit[r] == StandardFormLP::npos) {
      unit[r] = j;
    }
  }
  std::vector<Triplet> entries = lp.A.triplets();
  basis_.assign(m_, 0);
  std::size_t col = n_;
  for (std::size_t i = 0; i < m_; ++i) {
    if (unit[i] != StandardFormLP::npos) {
      basis_[i] = unit[i];
    } else {
      entries.push_back({i, col, lp.b[i] < 0.0 ? -1.0 : 1.0});
      basis_[i] = col++;
    }
  }
  matrix_ = SparseMatrix(m_, col, std::move(entries));
  phase1_cost_.assign(col, 0.0);
  phase2_cost_.assign(col, 0.0);
  for (std::size_t j = n_; j < col; ++j) phase1_cost_[j] = 1.0;
  std::copy(lp.c.begin(), lp.c.end(), phase2_cost_.begin());
  enterable_.assign(col, 0);
  std::fill(enterable_.begin(), enterable_.begin() + static_cast<std::ptrdiff_t>(n_), 1);
  position_.assign(col, -1);
  for (std::size_t i = 0; i < m_; ++i) position_[basis_[i]] = static_cast<std::ptrdiff_t>(i);
}

double RevisedSimplex::elapsed() const { return now_seconds() - start_; }

bool RevisedSimplex::refactor() {
  if (factor_.factor(matrix_, basis_)) return true;
  // One retry with fresh symbolic analysis; the factor object is rebuilt anyway.
  return factor_.factor(matrix_, basis_);
}

void RevisedSimplex::recompute_x() {
  x_basic_ = lp_.b;
  factor_.ftran(x_basic_);
}

bool RevisedSimplex::install_basis(std::vector<std::size_t> basis) {
  if (basis.size() != m_) return false;
  std::fill(position_.begin(), position_.end(), -1);
  for (std::size_t i = 0; i < m_; ++i) {
    if (basis[i] >= matrix_.cols() || position_[basis[i]] >= 0) return false;
    position_[basis[i]] = static_cast<std::ptrdiff_t>(i);
  }
  basis_ = std::move(basis);
  if (!refactor()) return false;
  recompute_x();
  return true;
}

std::vector<std::size_t> RevisedSimplex::nonbasic() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < matrix_.cols(); ++j) {
    if (enterable_[j] && position_[j] < 0) out.push_back(j);
  }
  return out;
}

void RevisedSimplex::compute_reduced(std::span<const double> cost, std::vector<std::size_t>& cols,
                                     std::vector<double>& reduced) const {
  std::vector<double> y(m_);
  for (std::size_t i = 0; i < m_; ++i) y[i] = cost[basis_[i]];
  factor_.btran(y);
  cols.clear();
  reduced.clear();
  for (std::size_t j = 0; j < matrix_.cols(); ++j) {
    if (!enterable_[j] || position_[j] >= 0) continue;
    cols.push_back(j);
    reduced.push_back(cost[j] - matrix_.column_dot(j, y));
  }
}

std::vector<double> RevisedSimplex::reduced_costs() const {
  std::vector<std::size_t> cols;
  std::vector<double> reduced;
  compute_reduced(phase2_cost_, cols, reduced);
  return reduced;
}

std::vector<double> RevisedSimplex::ftran_column(std::size_t col) const {
  std::vector<double> a(m_, 0.0);
  const auto rows = matrix_.column_rows(col);
  const auto vals = matrix_.column_values(col);
  for (std::size_t p = 0; p < rows.size(); ++p) a[rows[p]] = vals[p];
  factor_.ftran(a);
  return a;
}

double RevisedSimplex::objective(std::span<const double> cost) const {
  double z = 0.0;
  for (std::size_t i = 0; i < m_; ++i) z += cost[basis_[i]] * x_basic_[i];
  return z;
}

RevisedSimplex::Step RevisedSimplex::iterate(Phase phase) {
  if (total_iterations_ >= opt_.limits.max_iterations) {
    diagnostic_ = "iteration limit reached";
    return Step::Limit;
  }
  if (elapsed() >= opt_.limits.time_limit_seconds) {
    diagnostic_ = "time limit reached";
    return Step::Limit;
  }
  const std::span<const double> cost = phase == Phase::One ? phase1_cost_ : phase2_cost_;
  const PivotRule::Kind rule = phase == Phase::One ? PivotRule::Kind::Dantzig : opt_.rule.kind;
  // Phase I always prices with a tight tolerance; Phase II uses eps_opt.
  const double tol = phase == Phase::One ? 1e-9 : opt_.eps_opt;

  const double t0 = now_seconds();
  std::vector<std::size_t> cols;
  std::vector<double> reduced;
  compute_reduced(cost, cols, reduced);

  std::optional<std::size_t> pick;
  if (bland_) {
    for (std::size_t i = 0; i < reduced.size() && !pick; ++i) {
      if (reduced[i] < -tol) pick = i;
    }
  } else {
    auto norm = [&](std::size_t i) {
      const auto u = ftran_column(cols[i]);
      double s = 0.0;
      for (double v : u) s += v * v;
      return std::sqrt(s);
    };
    pick = choose_column(reduced, rule, tol, norm, rng_);
  }
  if (!pick) return Step::Optimal;
  const std::size_t entering = cols[*pick];

  std::vector<double> u = ftran_column(entering);
  {
    // Accuracy check: ||B u - a||_inf relative to ||a||_inf.
    std::vector<double> bu(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (u[i] == 0.0) continue;
      const auto rows = matrix_.column_rows(basis_[i]);
      const auto vals = matrix_.column_values(basis_[i]);
      for (std::size_t p = 0; p < rows.size(); ++p) bu[rows[p]] += vals[p] * u[i];
    }
    const auto rows = matrix_.column_rows(entering);
    const auto vals = matrix_.column_values(entering);
    double anorm = 0.0;
    for (std::size_t p = 0; p < rows.size(); ++p) {
      bu[rows[p]] -= vals[p];
      anorm = std::max(anorm, std::abs(vals[p]));
    }
    if (inf_norm(bu) > 1e-7 * (1.0 + anorm)) {
      if (factor_.eta_count() == 0) {
        diagnostic_ = "FTRAN residual above tolerance on a fresh factorization";
        return Step::Failure;
      }
      if (!refactor()) {
        diagnostic_ = "refactorization failed after accuracy loss";
        return Step::Failure;
      }
      recompute_x();
      return Step::Continue;  // reprice with the fresh factors
    }
  }

  const auto ratio = ratio_test(x_basic_, u, basis_);
  if (!ratio) return Step::Unbounded;
  const double t1 = now_seconds();

  if (phase == Phase::Two && opt_.observer) {
    IterationView view{phase2_iterations_,
                       n_ + locked_artificials_,
                       m_,
                       matrix_,
                       basis_,
                       phase2_cost_,
                       cols,
                       reduced,
                       entering,
                       u,
                       ratio->row,
                       ratio->theta,
                       x_basic_,
                       factor_,
                       objective(phase2_cost_),
                       opt_.eps_opt,
                       opt_.rule.kind};
    opt_.observer->before_pivot(view);
  }

  const double t2 = now_seconds();
  const std::size_t row = ratio->row;
  const double theta = ratio->theta;
  for (std::size_t i = 0; i < m_; ++i) x_basic_[i] -= theta * u[i];
  x_basic_[row] = theta;
  const std::size_t leaving = basis_[row];
  position_[leaving] = -1;
  if (leaving >= n_) enterable_[leaving] = 0;
  basis_[row] = entering;
  position_[entering] = static_cast<std::ptrdiff_t>(row);
  factor_.update(row, u);
  if (factor_.eta_count() >= opt_.refactor_interval) {
    if (!refactor()) {
      diagnostic_ = "basis became singular after pivot; refactorization failed";
      return Step::Failure;
    }
    recompute_x();
  }
  if (theta < 1e-12) {
    if (++degenerate_run_ >= opt_.bland_after) bland_ = true;
  } else {
    degenerate_run_ = 0;
    bland_ = false;
  }
  const double t3 = now_seconds();

  ++total_iterations_;
  if (phase == Phase::Two) {
    if (opt_.observer) opt_.observer->after_pivot(phase2_iterations_, (t1 - t0) + (t3 - t2));
    ++phase2_iterations_;
  }
  return Step::Continue;
}

bool RevisedSimplex::drive_out_artificials() {
  for (std::size_t r = 0; r < m_; ++r) {
    if (basis_[r] < n_) continue;
    std::vector<double> rho(m_, 0.0);
    rho[r] = 1.0;
    factor_.btran(rho);
    std::size_t best = StandardFormLP::npos;
    double best_abs = 1e-7;
    for (std::size_t j = 0; j < n_; ++j) {
      if (position_[j] >= 0) continue;
      const double alpha = std::abs(matrix_.column_dot(j, rho));
      if (alpha > best_abs) {
        best_abs = alpha;
        best = j;
      }
    }
    if (best == StandardFormLP::npos) {
      ++locked_artificials_;  // redundant row: the artificial stays basic at zero
      continue;
    }
    const std::vector<double> u = ftran_column(best);
    const double theta = x_basic_[r] / u[r];
    for (std::size_t i = 0; i < m_; ++i) x_basic_[i] -= theta * u[i];
    x_basic_[r] = theta;
    position_[basis_[r]] = -1;
    basis_[r] = best;
    position_[best] = static_cast<std::ptrdiff_t>(r);
    factor_.update(r, u);
  }
  if (!refactor()) return false;
  recompute_x();
  return true;
}

std::vector<double> RevisedSimplex::solution() const {
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    if (basis_[i] < n_) y[basis_[i]] = x_basic_[i];
  }
  return y;
}

SolveOutcome RevisedSimplex::solve() {
  start_ = now_seconds();
  SolveOutcome out;
  auto finish = [&](SolveStatus status) {
    out.status = status;
    out.y = solution();
    out.x = lp_.to_original(out.y);
    double z = 0.0;
    for (std::size_t j = 0; j < n_; ++j) z += lp_.c[j] * out.y[j];
    out.objective = lp_.original_objective(z);
    out.iterations = total_iterations_;
    out.phase2_iterations = phase2_iterations_;
    out.refactorizations = factor_.refactor_count();
    out.diagnostic = diagnostic_;
    return out;
  };
  auto limit_status = [&]() {
    return total_iterations_ >= opt_.limits.max_iterations ? SolveStatus::IterationLimit
                                                           : SolveStatus::TimeLimit;
  };

  if (!refactor()) {
    diagnostic_ = "initial basis factorization failed";
    return finish(SolveStatus::NumericalFailure);
  }
  recompute_x();
  const double bnorm = inf_norm(lp_.b);
  const double feas_tol = 1e-6 * (1.0 + bnorm);

  if (matrix_.cols() > n_) {
    Step step;
    while ((step = iterate(Phase::One)) == Step::Continue) {
    }
    if (step == Step::Limit) return finish(limit_status());
    if (step != Step::Optimal) {
      if (diagnostic_.empty()) diagnostic_ = "phase I did not terminate normally";
      return finish(SolveStatus::NumericalFailure);
    }
    if (!refactor()) {
      diagnostic_ = "refactorization failed at end of phase I";
      return finish(SolveStatus::NumericalFailure);
    }
    recompute_x();
    if (objective(phase1_cost_) > feas_tol) {
      diagnostic_ = "phase I optimum has positive infeasibility";
      return finish(SolveStatus::Infeasible);
    }
    if (!drive_out_artificials()) {
      diagnostic_ = "refactorization failed while removing artificials";
      return finish(SolveStatus::NumericalFailure);
    }
  }
  degenerate_run_ = 0;
  bland_ = false;

  Step step;
  while ((step = iterate(Phase::Two)) == Step::Continue) {
  }
  switch (step) {
    case Step::Limit: return finish(limit_status());
    case Step::Failure: return finish(SolveStatus::NumericalFailure);
    case Step::Unbounded: return finish(SolveStatus::Unbounded);
    default: break;
  }

  // Final accuracy check on fresh factors.
  if (!refactor()) {
    diagnostic_ = "final refactorization failed";
    return finish(SolveStatus::NumericalFailure);
  }
  recompute_x();
  const std::vector<double> y = solution();
  std::vector<double> full(matrix_.cols(), 0.0);
  std::copy(y.begin(), y.end(), full.begin());
  for (std::size_t i = 0; i < m_; ++i) full[basis_[i]] = x_basic_[i];
  std::vector<double> r = matrix_.multiply(full);
  for (std::size_t i = 0; i < m_; ++i) r[i] -= lp_.b[i];
  if (inf_norm(r) > feas_tol) {
    diagnostic_ = "final residual above tolerance";
    return finish(SolveStatus::NumericalFailure);
  }
  return finish(SolveStatus::Optimal);
}

SolveOutcome solve_lp(const LinearProgram& lp, SimplexOptions options) {
  const StandardFormLP sf = standardize(lp);
  RevisedSimplex solver(sf, options);
  return solver.solve();
}

}  // namespace hybridbench
