#include "hybridbench/iter_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hybridbench {

const char* to_string(InverseNormMethod m) {
  switch (m) {
    case InverseNormMethod::Exact: return "exact";
    case InverseNormMethod::Estimate: return "estimate";
    case InverseNormMethod::Unavailable: return "unavailable";
  }
  return "?";
}

double kappa_lower_bound(double kappa1, std::size_t m) {
  if (m == 0 || !std::isfinite(kappa1)) return 1.0;
  return std::max(1.0, kappa1 / static_cast<double>(m));
}

namespace {

double abs_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

// Hager's method as refined by Higham (LAPACK xLACON without the final
// alternating-sign probe): at most five FTRAN/BTRAN pairs.
double hager_higham(const Factorization& factor, std::size_t m) {
  std::vector<double> x(m, 1.0 / static_cast<double>(m));
  double estimate = 0.0;
  std::size_t last_j = m;
  for (int iter = 0; iter < 5; ++iter) {
    std::vector<double> y = x;
    factor.ftran(y);
    estimate = std::max(estimate, abs_sum(y));
    std::vector<double> z(m);
    for (std::size_t i = 0; i < m; ++i) z[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    factor.btran(z);
    std::size_t j = 0;
    for (std::size_t i = 1; i < m; ++i) {
      if (std::abs(z[i]) > std::abs(z[j])) j = i;
    }
    double ztx = 0.0;
    for (std::size_t i = 0; i < m; ++i) ztx += z[i] * x[i];
    if (std::abs(z[j]) <= ztx || j == last_j) break;
    std::fill(x.begin(), x.end(), 0.0);
    x[j] = 1.0;
    last_j = j;
  }
  return estimate;
}

}  // namespace

InverseNorm norm1_inverse(const Factorization& factor, std::size_t m, std::size_t exact_limit) {
  InverseNorm out;
  if (m == 0 || !factor.valid()) {
    out.method = InverseNormMethod::Unavailable;
    out.value = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  if (m <= exact_limit) {
    double best = 0.0;
    std::vector<double> col(m);
    for (std::size_t i = 0; i < m; ++i) {
      std::fill(col.begin(), col.end(), 0.0);
      col[i] = 1.0;
      factor.ftran(col);
      best = std::max(best, abs_sum(col));
    }
    out.value = best;
    out.method = InverseNormMethod::Exact;
  } else {
    out.value = hager_higham(factor, m);
    out.method = InverseNormMethod::Estimate;
  }
  if (!std::isfinite(out.value) || out.value <= 0.0) {
    out.method = InverseNormMethod::Unavailable;
    out.value = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

NormalizedBounds normalized_bounds(const IterationMetrics& metrics) {
  NormalizedBounds nb;
  if (metrics.d == 0 || metrics.basis_max_abs <= 0.0) return nb;
  const double d = static_cast<double>(metrics.d);
  nb.norm1_hat_lb = metrics.norm1_basis / (d * metrics.basis_max_abs);
  nb.norm_max_hat_lb = 1.0 / d;
  return nb;
}

IterationMetrics collect(const IterationView& view, std::size_t exact_limit) {
  IterationMetrics r;
  r.iteration = view.iteration;
  r.n = view.n;
  r.m = view.m;
  r.objective = view.objective;

  const SparseMatrix basis = view.matrix.select_columns(view.basis);
  r.nnz_basis = basis.nnz();
  const Sparsity sp = sparsity(basis);
  r.d_c = sp.max_col_nnz;
  r.d_r = sp.max_row_nnz;
  r.d = sp.d;
  r.basis_max_abs = matrix_max_abs(basis);
  r.norm1_basis = matrix_norm_1(basis);

  const InverseNorm inv = norm1_inverse(view.factor, view.m, exact_limit);
  r.inverse_method = inv.method;
  r.norm1_basis_inv = inv.value;
  if (inv.method == InverseNormMethod::Unavailable) {
    r.kappa1 = std::numeric_limits<double>::quiet_NaN();
    r.kappa_lb = 1.0;
  } else {
    r.kappa1 = r.norm1_basis * r.norm1_basis_inv;
    r.kappa_lb = kappa_lower_bound(r.kappa1, r.m);
  }

  for (double rc : view.reduced) {
    if (rc < -view.eps_opt) ++r.t_enter;
    r.max_abs_reduced_cost = std::max(r.max_abs_reduced_cost, std::abs(rc));
  }

  // Scale c so that ||c_B||_2 = 1, then take the largest nonbasic |c_l|.
  double cb = 0.0;
  for (std::size_t j : view.basis) cb += view.cost[j] * view.cost[j];
  cb = std::sqrt(cb);
  double scale_norm = cb;
  if (cb == 0.0) {
    double all = 0.0;
    for (std::size_t j = 0; j < view.n && j < view.cost.size(); ++j) {
      all += view.cost[j] * view.cost[j];
    }
    scale_norm = std::sqrt(all);
    r.c_norm_fallback = true;
  }
  if (scale_norm > 0.0) {
    double cmax = 0.0;
    for (std::size_t j : view.nonbasic) cmax = std::max(cmax, std::abs(view.cost[j]));
    r.c_max = cmax / scale_norm;
  }

  double u2 = 0.0;
  for (double v : view.u) {
    if (v > kPivotTolerance) ++r.t_u;
    u2 += v * v;
  }
  r.u_norm2 = std::sqrt(u2);
  return r;
}

void MetricsRecorder::before_pivot(const IterationView& view) {
  records_.push_back(collect(view, exact_limit_));
}

void MetricsRecorder::after_pivot(std::size_t iteration, double seconds) {
  if (!records_.empty() && records_.back().iteration == iteration) {
    records_.back().classical_iter_seconds = seconds;
  }
}

}  // namespace hybridbench
