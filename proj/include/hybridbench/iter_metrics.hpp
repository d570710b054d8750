#pragma once

#include <cstddef>
#include <vector>

#include "hybridbench/factorization.hpp"
#include "hybridbench/simplex.hpp"

namespace hybridbench {

enum class InverseNormMethod { Exact, Estimate, Unavailable };
const char* to_string(InverseNormMethod m);

/// Everything the per-iteration bound formulas consume, logged before the pivot.
struct IterationMetrics {
  std::size_t iteration = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t nnz_basis = 0;
  std::size_t d_c = 0;
  std::size_t d_r = 0;
  std::size_t d = 0;
  double basis_max_abs = 0.0;
  double norm1_basis = 0.0;
  double norm1_basis_inv = 0.0;
  InverseNormMethod inverse_method = InverseNormMethod::Exact;
  double kappa1 = 1.0;
  double kappa_lb = 1.0;
  std::size_t t_enter = 0;
  double max_abs_reduced_cost = 0.0;
  double c_max = 0.0;
  bool c_norm_fallback = false;  // c_B = 0, scaled by ||c||_2 instead
  std::size_t t_u = 0;
  double u_norm2 = 0.0;
  double objective = 0.0;
  double classical_iter_seconds = 0.0;
};

struct NormalizedBounds {
  double norm1_hat_lb = 0.0;
  double norm_max_hat_lb = 0.0;
};

struct InverseNorm {
  double value = 0.0;
  InverseNormMethod method = InverseNormMethod::Exact;
};

inline constexpr std::size_t kExactInverseLimit = 2000;

/// max(1, kappa1 / m)
double kappa_lower_bound(double kappa1, std::size_t m);

/// ||B^{-1}||_1: exact from m FTRANs when m <= exact_limit, otherwise the
/// Hager-Higham estimate (a lower bound). Unavailable on non-finite results.
InverseNorm norm1_inverse(const Factorization& factor, std::size_t m,
                          std::size_t exact_limit = kExactInverseLimit);

NormalizedBounds normalized_bounds(const IterationMetrics& metrics);

/// Reads the state at `view`; does not touch the solver.
IterationMetrics collect(const IterationView& view, std::size_t exact_limit = kExactInverseLimit);

/// Observer that records metrics for every Phase-II iteration.
class MetricsRecorder : public SimplexObserver {
 public:
  explicit MetricsRecorder(std::size_t exact_limit = kExactInverseLimit)
      : exact_limit_(exact_limit) {}
  void before_pivot(const IterationView& view) override;
  void after_pivot(std::size_t iteration, double seconds) override;
  const std::vector<IterationMetrics>& records() const { return records_; }
  std::vector<IterationMetrics> take() { return std::move(records_); }

 private:
  std::size_t exact_limit_;
  std::vector<IterationMetrics> records_;
};

}  // namespace hybridbench
