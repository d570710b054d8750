#include "hybridbench/factorization.hpp"

#include <algorithm>
#include <cmath>

namespace hybridbench {

Factorization::Factorization() = default;
Factorization::~Factorization() = default;
Factorization::Factorization(Factorization&&) noexcept = default;
Factorization& Factorization::operator=(Factorization&&) noexcept = default;

bool Factorization::factor(const SparseMatrix& matrix, std::span<const std::size_t> basis) {
  m_ = basis.size();
  etas_.clear();
  valid_ = false;
  ++refactors_;

  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto rows = matrix.column_rows(basis[k]);
    const auto vals = matrix.column_values(basis[k]);
    for (std::size_t p = 0; p < rows.size(); ++p) {
      trips.emplace_back(static_cast<int>(rows[p]), static_cast<int>(k), vals[p]);
    }
  }
  basis_.resize(static_cast<int>(m_), static_cast<int>(m_));
  basis_.setFromTriplets(trips.begin(), trips.end());
  basis_.makeCompressed();
  if (m_ == 0) {
    valid_ = true;
    return true;
  }

  lu_ = std::make_unique<Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>>();
  lu_->analyzePattern(basis_);
  lu_->factorize(basis_);
  if (lu_->info() != Eigen::Success) return false;

  // Spot-check a few unit vectors spread over the index range.
  spot_check_ = 0.0;
  const std::size_t probes = std::min<std::size_t>(m_, 3);
  for (std::size_t p = 0; p < probes; ++p) {
    const std::size_t i = (p * 7919 + m_ / 2) % m_;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<int>(m_));
    e[static_cast<int>(i)] = 1.0;
    const Eigen::VectorXd x = lu_->solve(e);
    if (!x.allFinite()) return false;
    spot_check_ = std::max(spot_check_, (basis_ * x - e).lpNorm<Eigen::Infinity>());
  }
  if (spot_check_ > 1e-7) return false;
  valid_ = true;
  return true;
}

void Factorization::update(std::size_t row, std::span<const double> u) {
  Eta eta;
  eta.row = row;
  eta.pivot = u[row];
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i != row && u[i] != 0.0) {
      eta.index.push_back(i);
      eta.value.push_back(u[i]);
    }
  }
  etas_.push_back(std::move(eta));
}

void Factorization::ftran(std::vector<double>& x) const {
  if (m_ == 0) return;
  Eigen::Map<Eigen::VectorXd> v(x.data(), static_cast<int>(m_));
  v = lu_->solve(Eigen::VectorXd(v));
  for (const Eta& eta : etas_) {
    const double xr = x[eta.row] / eta.pivot;
    x[eta.row] = xr;
    if (xr == 0.0) continue;
    for (std::size_t p = 0; p < eta.index.size(); ++p) x[eta.index[p]] -= eta.value[p] * xr;
  }
}

void Factorization::btran(std::vector<double>& y) const {
  if (m_ == 0) return;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double sum = y[it->row];
    for (std::size_t p = 0; p < it->index.size(); ++p) sum -= it->value[p] * y[it->index[p]];
    y[it->row] = sum / it->pivot;
  }
  Eigen::Map<Eigen::VectorXd> v(y.data(), static_cast<int>(m_));
  v = lu_->transpose().solve(Eigen::VectorXd(v));
}

}  // namespace hybridbench
