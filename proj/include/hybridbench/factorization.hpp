#pragma once

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "hybridbench/lp_core.hpp"

namespace hybridbench {

/// LU factors of a basis matrix plus a product-form eta file for the pivots
/// applied since the last refactorization.
///
/// B_k = B_0 E_1 ... E_k where E_j is the identity with column r_j replaced by
/// the FTRAN'd entering column, so FTRAN applies E_j^{-1} in order and BTRAN
/// applies E_j^{-T} in reverse before the transposed LU solve.
class Factorization {
 public:
  Factorization();
  ~Factorization();
  Factorization(Factorization&&) noexcept;
  Factorization& operator=(Factorization&&) noexcept;

  /// Factor the columns `basis` of `matrix`. Returns false if singular.
  bool factor(const SparseMatrix& matrix, std::span<const std::size_t> basis);

  /// Record that the basic column in `row` was replaced; `u` is B^{-1} a_entering.
  void update(std::size_t row, std::span<const double> u);

  /// Solve B x = rhs in place.
  void ftran(std::vector<double>& x) const;
  /// Solve B^T y = rhs in place.
  void btran(std::vector<double>& y) const;

  std::size_t size() const { return m_; }
  std::size_t eta_count() const { return etas_.size(); }
  std::size_t refactor_count() const { return refactors_; }
  bool valid() const { return valid_; }
  /// Largest ||B solve(e_i) - e_i||_inf over the spot checks of the last factor().
  double last_spot_check() const { return spot_check_; }

 private:
  struct Eta {
    std::size_t row;
    double pivot;
    std::vector<std::size_t> index;  // off-pivot nonzeros of u
    std::vector<double> value;
  };

  std::size_t m_ = 0;
  bool valid_ = false;
  std::size_t refactors_ = 0;
  double spot_check_ = 0.0;
  Eigen::SparseMatrix<double> basis_;
  std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>> lu_;
  std::vector<Eta> etas_;
};

}  // namespace hybridbench
