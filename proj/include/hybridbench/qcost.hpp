#pragma once

#include <cstddef>
#include <string>

#include "hybridbench/iter_metrics.hpp"
#include "hybridbench/simplex.hpp"

namespace hybridbench::qcost {

// Lower bounds on gate counts of the quantum simplex subroutines. Every
// function is pure; floors and clamps are reported through flags instead of
// errors so batch runs keep going.

enum Flag : unsigned {
  kNegativeFactorClamped = 1u << 0,
  kAlphaClamped = 1u << 1,
  kEmptySum = 1u << 2,
  kDomainGuard = 1u << 3,  // input outside the formula's domain, value 0
};

/// "negative-factor-clamped|empty-sum", or "" for no flags.
std::string flag_names(unsigned flags);

struct Bound {
  double value = 0.0;
  unsigned flags = 0;
};

struct GateCosts {
  double c1 = 1.0;  // one-qubit gate
  double c2 = 1.0;  // two-qubit gate
  double ct = 1.0;  // Toffoli
};

struct QlsParams {
  double norm1 = 1.0;
  double norm_max = 1.0;
  double d = 1.0;
  double kappa = 1.0;
  double eps = 1e-3;
};

// --- search ---------------------------------------------------------------

/// Expected Grover-operator applications of QSearch over `size` items with
/// `marked` marked ones. size < 2 or marked > size gives 0 + kDomainGuard.
Bound n_qsearch(std::size_t size, std::size_t marked);

enum class QminSumStart { FromOne, FromZero };

/// sum_{s=start}^{N-1} n_Q(N, s)/(s+1); cached per (N, start), thread-safe.
Bound qmin_sum(std::size_t size, QminSumStart start = QminSumStart::FromOne);

/// ceil(log_3(1/eps)) with exact powers of three kept exact.
int ceil_log3_inv(double eps);

/// 3 ceil(log_3(1/eps)) qmin_sum(N)
Bound qmin_expected_queries(std::size_t size, double eps,
                            QminSumStart start = QminSumStart::FromOne);

// --- building blocks ------------------------------------------------------

/// Counting-register width ceil(log2(1/eps) + log2(1 + 1/(2 delta))), floored at 0.
int qpe_register_bits(double eps, double delta);
Bound qpe_cost_lb(double eps, double delta, double cost_u, const GateCosts& costs = {});

enum class QaeRounding { Ceil, Continuous };
/// (2^{n_c+1} - 1) C[A]. Continuous keeps n_c unrounded, which turns
/// eps = 1/(4 sqrt Z), delta = 1/4 into exactly 24 sqrt(Z) - 1.
Bound qae_cost_lb(double eps, double delta, double cost_a, const GateCosts& costs = {},
                  QaeRounding rounding = QaeRounding::Ceil);

Bound ctrl_cost(std::size_t n_controls, double cost_u, const GateCosts& costs = {});
Bound lcu_cost(std::size_t delta_terms, double cost_u, const GateCosts& costs = {});
/// floor(pi / (4 asin(sqrt p))) with a 1e-12 relative guard against rounding.
std::size_t amplification_rounds(double p);
Bound qaa_cost(double p, std::size_t n_qubits, double cost_chi, double cost_a,
               const GateCosts& costs = {});
Bound oaa_cost(double p, std::size_t mu, double cost_a, const GateCosts& costs = {});

// --- Hamiltonian simulation and linear systems ----------------------------

/// Smallest integer w >= 1 with w - w ln w <= ln(eps_seg^2 / 2); scans up to 1e6.
std::size_t segment_order(double eps_seg);
/// Base-2 logarithm used for the qubit-count factor.
double qubit_count_log(double x);

Bound ham_sim_lb(double norm1, double norm_max, double d, double time_t, double eps,
                 const GateCosts& costs = {});

struct QlsDetail {
  double time_t = 0.0;
  double delta_z = 0.0;
  long long big_k = 0;
  double alpha = 0.0;
  double gamma = 0.0;
  double eps_seg = 0.0;
  std::size_t w = 0;
};

Bound qls_lb(const QlsParams& p, const GateCosts& costs = {}, QlsDetail* detail = nullptr);

// --- core subroutines -----------------------------------------------------

Bound redcost_lb(double qls_cost);
Bound interfere_lb(double cost_u, double cost_v);
Bound signestnfn_lb(double eps, double cost_u);
Bound signestnfp_lb(double eps, double cost_u);
/// QLS precision used inside CanEnter: 0.1 eps / sqrt 2.
double canenter_qls_precision(double eps);
/// Prefactor times an already evaluated C[QLS(., 0.1 eps/sqrt 2)].
Bound canenternfn_lb(double eps, double qls_cost);
Bound canenternfp_lb(double eps, double qls_cost);
/// Evaluates QLS at canenter_qls_precision(eps) for the given matrix data.
Bound canenternfn_lb(double eps, QlsParams matrix, const GateCosts& costs = {});
Bound canenternfp_lb(double eps, QlsParams matrix, const GateCosts& costs = {});

// --- per-iteration bounds -------------------------------------------------

/// Matrix-side QLS inputs shared by all subroutines of one iteration.
struct QlsMatrix {
  double norm1 = 1.0;
  double norm_max = 1.0;
  double d = 1.0;
  double kappa = 1.0;
  QlsParams at(double eps) const { return {norm1, norm_max, d, kappa, eps}; }
};

enum class FindColumnVariant { Random, QStER, QDanR };
const char* to_string(FindColumnVariant v);
FindColumnVariant variant_for(PivotRule::Kind rule);

struct IterationInputs {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t t_enter = 0;
  double c_max = 0.0;
  std::size_t t_u = 0;
  double u_norm2 = 0.0;
  QlsMatrix matrix;
};

IterationInputs inputs_from(const IterationMetrics& metrics);

struct BoundOptions {
  double eps = 1e-3;
  double delta = 1e-3;
  GateCosts costs;
  QminSumStart qster_start = QminSumStart::FromOne;
};

Bound is_optimal_lb(std::size_t n, std::size_t m, double eps, const QlsMatrix& a,
                    const GateCosts& costs = {});
/// Same with a fixed C[QLS] instead of an evaluated one.
Bound is_optimal_with_qls(std::size_t n, std::size_t m, double eps, double qls_cost);

Bound find_column_lb(FindColumnVariant variant, const IterationInputs& in,
                     const BoundOptions& opt);
/// QStER with a fixed C[QLS].
Bound find_column_qster_with_qls(std::size_t n_minus_m, double c_max, double eps,
                                 double qls_cost,
                                 QminSumStart start = QminSumStart::FromOne);

Bound is_unbounded_lb(std::size_t m, std::size_t t_u, double delta, const QlsMatrix& a,
                      const GateCosts& costs = {});
Bound find_row_lb(std::size_t m, double u_norm2, double delta, const QlsMatrix& a,
                  const GateCosts& costs = {});

struct IterationBound {
  double is_optimal = 0.0;
  double find_column = 0.0;
  double is_unbounded = 0.0;
  double find_row = 0.0;
  double total = 0.0;
  FindColumnVariant variant = FindColumnVariant::QStER;
  unsigned flags = 0;
};

IterationBound simplex_iter_lb(FindColumnVariant variant, const IterationInputs& in,
                               const BoundOptions& opt);

/// seconds / total; +inf when total is 0.
double required_gate_time(double classical_seconds, const IterationBound& bound);

}  // namespace hybridbench::qcost
