#include "hybridbench/qcost.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hybridbench::qcost {
namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt6 = std::sqrt(6.0);

// max(x, 0), raising the clamp flag when the floor fires.
double floor0(double x, unsigned& flags) {
  if (x < 0.0) {
    flags |= kNegativeFactorClamped;
    return 0.0;
  }
  return x;
}

bool usable(double x) { return std::isfinite(x) && x > 0.0; }

// ceil with near-integers snapped, so exact register widths stay exact.
int snapped_ceil(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < 1e-12 * std::max(1.0, std::abs(x))) return static_cast<int>(nearest);
  return static_cast<int>(std::ceil(x));
}

}  // namespace

std::string flag_names(unsigned flags) {
  std::string out;
  auto add = [&](unsigned bit, const char* name) {
    if (!(flags & bit)) return;
    if (!out.empty()) out += '|';
    out += name;
  };
  add(kNegativeFactorClamped, "negative-factor-clamped");
  add(kAlphaClamped, "alpha-clamped");
  add(kEmptySum, "empty-sum");
  add(kDomainGuard, "domain-guard");
  return out;
}

int qpe_register_bits(double eps, double delta) {
  const int bits = snapped_ceil(std::log2(1.0 / eps) + std::log2(1.0 + 1.0 / (2.0 * delta)));
  return std::max(bits, 0);
}

Bound qpe_cost_lb(double eps, double delta, double cost_u, const GateCosts& costs) {
  if (!usable(eps) || !usable(delta) || cost_u < 0.0) return {0.0, kDomainGuard};
  const int nc = qpe_register_bits(eps, delta);
  return {nc * costs.c1 + (std::ldexp(1.0, nc) - 1.0) * cost_u, 0};
}

Bound qae_cost_lb(double eps, double delta, double cost_a, const GateCosts& costs,
                  QaeRounding rounding) {
  (void)costs;
  if (!usable(eps) || !usable(delta) || cost_a < 0.0) return {0.0, kDomainGuard};
  double nc;
  if (rounding == QaeRounding::Ceil) {
    nc = qpe_register_bits(eps, delta);
  } else {
    nc = std::max(0.0, std::log2(1.0 / eps) + std::log2(1.0 + 1.0 / (2.0 * delta)));
  }
  return {(std::exp2(nc + 1.0) - 1.0) * cost_a, 0};
}

Bound ctrl_cost(std::size_t n_controls, double cost_u, const GateCosts& costs) {
  if (n_controls < 1) return {0.0, kDomainGuard};
  return {2.0 * static_cast<double>(n_controls - 1) * costs.ct + cost_u, 0};
}

Bound lcu_cost(std::size_t delta_terms, double cost_u, const GateCosts& costs) {
  if (delta_terms < 1) return {0.0, kDomainGuard};
  return {2.0 * static_cast<double>(delta_terms - 1) * costs.c2 + cost_u, 0};
}

std::size_t amplification_rounds(double p) {
  const double theta = std::asin(std::sqrt(p));
  const double rounds = kPi / (4.0 * theta);
  return static_cast<std::size_t>(std::floor(rounds * (1.0 + 1e-12)));
}

Bound qaa_cost(double p, std::size_t n_qubits, double cost_chi, double cost_a,
               const GateCosts& costs) {
  if (!(p > 0.0) || p > 1.0 || n_qubits < 1) return {0.0, kDomainGuard};
  const double m = static_cast<double>(amplification_rounds(p));
  const double n = static_cast<double>(n_qubits);
  return {m * cost_chi + (2 * m + 1) * cost_a + 2 * m * costs.c1 + m * costs.c2 +
              2 * m * (n - 1) * costs.ct,
          0};
}

Bound oaa_cost(double p, std::size_t mu, double cost_a, const GateCosts& costs) {
  if (!(p > 0.0) || p > 1.0 || mu < 1) return {0.0, kDomainGuard};
  const double m = static_cast<double>(amplification_rounds(p));
  return {4 * m * costs.c1 + 2 * m * costs.c2 + (2.0 * static_cast<double>(mu) - 1) * costs.ct +
              (2 * m + 1) * cost_a,
          0};
}

std::size_t segment_order(double eps_seg) {
  if (!usable(eps_seg)) throw std::domain_error("segment precision must be positive");
  const double target = 2.0 * std::log(eps_seg) - std::log(2.0);
  for (std::size_t w = 1; w <= 1'000'000; ++w) {
    const double wd = static_cast<double>(w);
    if (wd - wd * std::log(wd) <= target) return w;
  }
  throw std::range_error("segment order exceeds scan limit 1e6");
}

double qubit_count_log(double x) { return std::log2(x); }

Bound ham_sim_lb(double norm1, double norm_max, double d, double time_t, double eps,
                 const GateCosts& costs) {
  if (!usable(norm1) || !usable(norm_max) || !(d >= 1.0) || !usable(time_t) || !usable(eps)) {
    return {0.0, kDomainGuard};
  }
  unsigned flags = 0;
  const double d2 = d * d;
  const double gamma = eps / (kSqrt2 * d2 * d * time_t);
  const double eps_seg = eps / (90.0 * gamma * time_t * d2 * std::ceil(norm_max / gamma));
  std::size_t w;
  try {
    w = segment_order(eps_seg);
  } catch (const std::exception&) {
    return {0.0, kDomainGuard};
  }
  const double width = floor0(norm1 - d2 * gamma, flags);
  const double arg = norm1 / gamma - d2;
  double qubits = 0.0;
  if (arg > 0.0) {
    qubits = floor0(std::ceil(qubit_count_log(arg)) - 1.0, flags);
  } else {
    flags |= kNegativeFactorClamped;
  }
  return {5.0 * time_t * width * static_cast<double>(w) * 2.0 * qubits * costs.ct, flags};
}

Bound qls_lb(const QlsParams& p, const GateCosts& costs, QlsDetail* detail) {
  if (!(p.kappa >= 1.0) || !usable(p.eps) || !(p.d >= 1.0) || !usable(p.norm1) ||
      !usable(p.norm_max) || !std::isfinite(p.kappa)) {
    return {0.0, kDomainGuard};
  }
  unsigned flags = 0;
  const double kappa = p.kappa;
  const double lg = std::log(1.0 + 8.0 * kappa / p.eps);
  const double time_t = 2.0 * kSqrt2 * kappa * lg;
  const double dz = 2.0 * kPi / (kappa + 1.0) / std::sqrt(lg);
  const auto big_k = static_cast<long long>(std::floor((kappa + 1.0) / kPi * lg));
  double sum = 0.0;
  for (long long k = 1; k <= big_k; ++k) {
    const double x = static_cast<double>(k) * dz;
    sum += x * std::exp(-x * x / 2.0);
  }
  double alpha = 2.0 * std::sqrt(kPi) * kappa / (kappa + 1.0) * 2.0 * sum;
  if (!(alpha > 1.0 + 1e-12)) {
    alpha = 1.0 + 1e-12;
    flags |= kAlphaClamped;
  }
  const double amplification = kPi / (2.0 * std::asin(1.0 / alpha)) + 1.0;
  const Bound sim = ham_sim_lb(p.norm1, p.norm_max, p.d, time_t, p.eps, costs);
  if (detail) {
    detail->time_t = time_t;
    detail->delta_z = dz;
    detail->big_k = big_k;
    detail->alpha = alpha;
    detail->gamma = p.eps / (kSqrt2 * p.d * p.d * p.d * time_t);
    detail->eps_seg = p.eps / (90.0 * detail->gamma * time_t * p.d * p.d *
                               std::ceil(p.norm_max / detail->gamma));
    detail->w = segment_order(detail->eps_seg);
  }
  return {amplification * sim.value, flags | sim.flags};
}

Bound redcost_lb(double qls_cost) { return {qls_cost, 0}; }

Bound interfere_lb(double cost_u, double cost_v) { return {cost_u + cost_v, 0}; }

Bound signestnfn_lb(double eps, double cost_u) {
  if (!usable(eps)) return {0.0, kDomainGuard};
  unsigned flags = 0;
  const double pre = floor0(5.0 * kSqrt3 * kPi / eps - 1.0, flags);
  return {pre * cost_u, flags};
}

Bound signestnfp_lb(double eps, double cost_u) {
  if (!usable(eps)) return {0.0, kDomainGuard};
  unsigned flags = 0;
  const double pre = floor0(45.0 * kSqrt3 * kPi / eps - 1.0, flags);
  return {pre * cost_u, flags};
}

double canenter_qls_precision(double eps) { return 0.1 * eps / kSqrt2; }

Bound canenternfn_lb(double eps, double qls_cost) {
  if (!usable(eps)) return {0.0, kDomainGuard};
  unsigned flags = 0;
  const double pre = floor0(50.0 * kSqrt6 * kPi / (11.0 * eps) - 1.0, flags);
  return {pre * qls_cost, flags};
}

Bound canenternfp_lb(double eps, double qls_cost) {
  if (!usable(eps)) return {0.0, kDomainGuard};
  unsigned flags = 0;
  const double pre = floor0(450.0 * kSqrt6 * kPi / (11.0 * eps) - 1.0, flags);
  return {pre * qls_cost, flags};
}

Bound canenternfn_lb(double eps, QlsParams matrix, const GateCosts& costs) {
  matrix.eps = canenter_qls_precision(eps);
  const Bound q = qls_lb(matrix, costs);
  Bound b = canenternfn_lb(eps, q.value);
  b.flags |= q.flags;
  return b;
}

Bound canenternfp_lb(double eps, QlsParams matrix, const GateCosts& costs) {
  matrix.eps = canenter_qls_precision(eps);
  const Bound q = qls_lb(matrix, costs);
  Bound b = canenternfp_lb(eps, q.value);
  b.flags |= q.flags;
  return b;
}

const char* to_string(FindColumnVariant v) {
  switch (v) {
    case FindColumnVariant::Random: return "random";
    case FindColumnVariant::QStER: return "qster";
    case FindColumnVariant::QDanR: return "qdanr";
  }
  return "?";
}

FindColumnVariant variant_for(PivotRule::Kind rule) {
  switch (rule) {
    case PivotRule::Kind::Dantzig: return FindColumnVariant::QDanR;
    case PivotRule::Kind::SteepestEdge: return FindColumnVariant::QStER;
    case PivotRule::Kind::Random: return FindColumnVariant::Random;
  }
  return FindColumnVariant::QStER;
}

IterationInputs inputs_from(const IterationMetrics& metrics) {
  IterationInputs in;
  in.n = metrics.n;
  in.m = metrics.m;
  in.t_enter = metrics.t_enter;
  in.c_max = metrics.c_max;
  in.t_u = metrics.t_u;
  in.u_norm2 = metrics.u_norm2;
  const NormalizedBounds nb = normalized_bounds(metrics);
  in.matrix.norm1 = nb.norm1_hat_lb;
  in.matrix.norm_max = nb.norm_max_hat_lb;
  in.matrix.d = static_cast<double>(metrics.d);
  in.matrix.kappa = metrics.kappa_lb;
  return in;
}

Bound is_optimal_with_qls(std::size_t n, std::size_t m, double eps, double qls_cost) {
  if (n <= m) return {0.0, kEmptySum};
  const Bound inner = canenternfp_lb(eps, qls_cost);
  unsigned flags = inner.flags;
  const double pre = floor0(24.0 * std::sqrt(static_cast<double>(n - m)) - 1.0, flags);
  return {pre * inner.value, flags};
}

Bound is_optimal_lb(std::size_t n, std::size_t m, double eps, const QlsMatrix& a,
                    const GateCosts& costs) {
  if (n <= m) return {0.0, kEmptySum};
  const Bound q = qls_lb(a.at(canenter_qls_precision(eps)), costs);
  Bound b = is_optimal_with_qls(n, m, eps, q.value);
  b.flags |= q.flags;
  return b;
}

Bound find_column_qster_with_qls(std::size_t n_minus_m, double c_max, double eps,
                                 double qls_cost, QminSumStart start) {
  if (n_minus_m < 2) return {0.0, kEmptySum};
  if (!usable(eps)) return {0.0, kDomainGuard};
  unsigned flags = 0;
  const Bound sum = qmin_sum(n_minus_m, start);
  flags |= sum.flags;
  const double pre = floor0(40.0 * kSqrt3 * kPi * c_max / eps - 1.0, flags);
  return {3.0 * ceil_log3_inv(eps) * pre * sum.value * qls_cost, flags};
}

Bound find_column_lb(FindColumnVariant variant, const IterationInputs& in,
                     const BoundOptions& opt) {
  if (in.n <= in.m) return {0.0, kEmptySum};
  const std::size_t free_cols = in.n - in.m;
  const double eps = opt.eps;
  switch (variant) {
    case FindColumnVariant::Random: {
      const Bound nq = n_qsearch(free_cols, std::min(in.t_enter, free_cols));
      if (nq.flags) return {0.0, nq.flags};
      const Bound inner = canenternfn_lb(eps, in.matrix.at(0.0), opt.costs);
      return {nq.value * inner.value, inner.flags};
    }
    case FindColumnVariant::QStER:
    case FindColumnVariant::QDanR: {
      if (free_cols < 2) return {0.0, kEmptySum};
      const bool dan = variant == FindColumnVariant::QDanR;
      double qls_eps = eps / (10.0 * in.c_max * kSqrt2);
      if (dan) qls_eps /= in.u_norm2;
      unsigned flags = 0;
      // A non-positive prefactor zeroes the bound; skip the QLS evaluation then.
      if (40.0 * kSqrt3 * kPi * in.c_max / eps - 1.0 < 0.0 || !usable(qls_eps)) {
        flags |= kNegativeFactorClamped;
        return {0.0, flags};
      }
      const Bound q = qls_lb(in.matrix.at(qls_eps), opt.costs);
      const QminSumStart start = dan ? QminSumStart::FromZero : opt.qster_start;
      Bound b = find_column_qster_with_qls(free_cols, in.c_max, eps, q.value, start);
      b.flags |= q.flags;
      return b;
    }
  }
  return {0.0, kDomainGuard};
}

Bound is_unbounded_lb(std::size_t m, std::size_t t_u, double delta, const QlsMatrix& a,
                      const GateCosts& costs) {
  const Bound nq = n_qsearch(m, std::min(t_u, m));
  if (nq.flags) return {0.0, nq.flags};
  if (!usable(delta)) return {0.0, kDomainGuard};
  unsigned flags = 0;
  const double pre = floor0(50.0 * kSqrt3 * kPi / (18.0 * delta) - 1.0, flags);
  if (pre == 0.0) return {0.0, flags};
  const Bound q = qls_lb(a.at(delta / 10.0), costs);
  return {nq.value * pre * q.value, flags | q.flags};
}

Bound find_row_lb(std::size_t m, double u_norm2, double delta, const QlsMatrix& a,
                  const GateCosts& costs) {
  const Bound nq = n_qsearch(m, 0);
  if (nq.flags) return {0.0, nq.flags};
  if (!usable(delta)) return {0.0, kDomainGuard};
  unsigned flags = 0;
  const double pre = floor0(kSqrt3 * kPi * u_norm2 / (2.0 * delta) - 1.0, flags);
  if (pre == 0.0) return {0.0, flags};
  const Bound q = qls_lb(a.at(delta / 2.0), costs);
  return {nq.value * pre * q.value, flags | q.flags};
}

IterationBound simplex_iter_lb(FindColumnVariant variant, const IterationInputs& in,
                               const BoundOptions& opt) {
  IterationBound out;
  out.variant = variant;
  const Bound opt_b = is_optimal_lb(in.n, in.m, opt.eps, in.matrix, opt.costs);
  const Bound col_b = find_column_lb(variant, in, opt);
  const Bound unb_b = is_unbounded_lb(in.m, in.t_u, opt.delta, in.matrix, opt.costs);
  const Bound row_b = find_row_lb(in.m, in.u_norm2, opt.delta, in.matrix, opt.costs);
  out.is_optimal = opt_b.value;
  out.find_column = col_b.value;
  out.is_unbounded = unb_b.value;
  out.find_row = row_b.value;
  out.total = out.is_optimal + out.find_column + out.is_unbounded + out.find_row;
  out.flags = opt_b.flags | col_b.flags | unb_b.flags | row_b.flags;
  return out;
}

double required_gate_time(double classical_seconds, const IterationBound& bound) {
  if (!(bound.total > 0.0)) return std::numeric_limits<double>::infinity();
  return classical_seconds / bound.total;
}

}  // namespace hybridbench::qcost
