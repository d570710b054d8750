#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hybridbench/lp_core.hpp"

#ifndef HB_FIXTURE_DIR
#error "HB_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace hbtest {

using namespace hybridbench;

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(HB_FIXTURE_DIR) / name;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

inline Eigen::MatrixXd dense(const SparseMatrix& m) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.rows()),
                                              static_cast<Eigen::Index>(m.cols()));
  for (const Triplet& t : m.triplets()) {
    out(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) = t.value;
  }
  return out;
}

inline SparseMatrix sparse(const Eigen::MatrixXd& d) {
  std::vector<Triplet> t;
  for (Eigen::Index j = 0; j < d.cols(); ++j) {
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
      if (d(i, j) != 0.0) {
        t.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), d(i, j)});
      }
    }
  }
  return SparseMatrix(static_cast<std::size_t>(d.rows()), static_cast<std::size_t>(d.cols()),
                      std::move(t));
}

// Random feasible, bounded LP over x >= 0: rows of mixed type built around a
// random interior point, plus a cap row sum(x) <= U so the region is bounded.
inline LinearProgram random_lp(std::uint64_t seed, std::size_t m, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-2.0, 4.0), pt(0.0, 2.0), slack(0.1, 1.5),
      cost(-3.0, 3.0);
  std::uniform_int_distribution<int> kind(0, 5), keep(0, 2);
  LinearProgram lp;
  lp.sense = kind(rng) % 2 ? Sense::Maximize : Sense::Minimize;
  std::vector<double> x0(n);
  for (double& v : x0) v = pt(rng);
  std::vector<Triplet> t;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (keep(rng) == 0) continue;
      const double a = std::round(coef(rng) * 4.0) / 4.0;
      if (a == 0.0) continue;
      t.push_back({i, j, a});
      ax += a * x0[j];
    }
    const int k = kind(rng);
    if (k <= 2) {
      lp.row_types.push_back(RowType::LessEqual);
      lp.rhs.push_back(ax + slack(rng));
    } else if (k <= 4) {
      lp.row_types.push_back(RowType::GreaterEqual);
      lp.rhs.push_back(ax - slack(rng));
    } else {
      lp.row_types.push_back(RowType::Equal);
      lp.rhs.push_back(ax);
    }
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    t.push_back({m - 1, j, 1.0});
    sum += x0[j];
  }
  lp.row_types.push_back(RowType::LessEqual);
  lp.rhs.push_back(sum + 3.0);
  lp.matrix = SparseMatrix(m, n, std::move(t));
  for (std::size_t j = 0; j < n; ++j) lp.objective.push_back(std::round(cost(rng) * 8.0) / 8.0);
  lp.bounds.assign(n, VariableBounds{});
  return lp;
}

// Optimum of an LP with x >= 0 and no other bounds by enumerating every basis
// of [A | slacks]; independent of the library's standard-form conversion.
inline std::optional<double> brute_force_optimum(const LinearProgram& lp) {
  const std::size_t m = lp.num_rows(), n = lp.num_cols();
  std::size_t slacks = 0;
  for (RowType r : lp.row_types) slacks += r != RowType::Equal;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                            static_cast<Eigen::Index>(n + slacks));
  a.leftCols(static_cast<Eigen::Index>(n)) = dense(lp.matrix);
  std::size_t s = n;
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.row_types[i] == RowType::LessEqual) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s++)) = 1.0;
    if (lp.row_types[i] == RowType::GreaterEqual) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s++)) = -1.0;
  }
  Eigen::VectorXd b(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) b(static_cast<Eigen::Index>(i)) = lp.rhs[i];
  const double sign = lp.sense == Sense::Maximize ? -1.0 : 1.0;

  const std::size_t cols = n + slacks;
  std::vector<bool> pick(cols, false);
  // Bases have rank(A) columns; redundant equality rows lower it below m.
  const auto rank = static_cast<std::size_t>(Eigen::FullPivLU<Eigen::MatrixXd>(a).rank());
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(rank), true);
  std::optional<double> best;
  do {
    std::vector<Eigen::Index> idx;
    for (std::size_t j = 0; j < cols; ++j) {
      if (pick[j]) idx.push_back(static_cast<Eigen::Index>(j));
    }
    Eigen::MatrixXd bm(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) bm.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(bm);
    if (lu.rank() != static_cast<Eigen::Index>(idx.size())) continue;
    const Eigen::VectorXd xb = lu.solve(b);
    if ((bm * xb - b).cwiseAbs().maxCoeff() > 1e-9) continue;
    if (xb.minCoeff() < -1e-9) continue;
    double obj = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (static_cast<std::size_t>(idx[k]) < n) obj += lp.objective[static_cast<std::size_t>(idx[k])] * xb(static_cast<Eigen::Index>(k));
    }
    obj *= sign;
    if (!best || obj < *best) best = obj;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  if (best) *best *= sign;
  return best;
}

}  // namespace hbtest
