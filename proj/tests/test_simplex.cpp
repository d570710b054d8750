#include <gtest/gtest.h>

#include "hybridbench/factorization.hpp"
#include "hybridbench/instance_gen.hpp"
#include "hybridbench/iter_metrics.hpp"
#include "hybridbench/simplex.hpp"
#include "support.hpp"

using namespace hybridbench;

namespace {

LinearProgram box() {
  LinearProgram lp;
  lp.sense = Sense::Maximize;
  lp.objective = {1, 1};
  lp.matrix = SparseMatrix(2, 2, {{0, 0, 1}, {1, 1, 1}});
  lp.rhs = {1, 1};
  lp.row_types = {RowType::LessEqual, RowType::LessEqual};
  lp.bounds.assign(2, {});
  return lp;
}

Graph cycle(std::size_t k) {
  Graph g;
  g.vertices = k;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t u = i, v = (i + 1) % k;
    if (u > v) std::swap(u, v);
    g.edges.push_back({u, v, 1.0});
  }
  return g;
}

}  // namespace

TEST(Simplex, BoxOptimum) {
  for (auto rule : {PivotRule::dantzig(), PivotRule::steepest_edge(), PivotRule::random(3)}) {
    SimplexOptions o;
    o.rule = rule;
    const auto out = solve_lp(box(), o);
    ASSERT_EQ(out.status, SolveStatus::Optimal);
    EXPECT_NEAR(out.objective, 2.0, 1e-12);
    EXPECT_NEAR(out.x[0], 1.0, 1e-12);
    EXPECT_NEAR(out.x[1], 1.0, 1e-12);
  }
}

TEST(Simplex, BoxOptimalBasisHasNonnegativeReducedCosts) {
  const auto sf = standardize(box());
  RevisedSimplex s(sf, {});
  ASSERT_EQ(s.solve().status, SolveStatus::Optimal);
  for (double r : s.reduced_costs()) EXPECT_GE(r, -1e-12);
}

TEST(Simplex, Unbounded) {
  LinearProgram lp;
  lp.objective = {-1, 0};
  lp.matrix = SparseMatrix(1, 2, {{0, 0, 1}, {0, 1, -1}});
  lp.rhs = {0};
  lp.row_types = {RowType::Equal};
  lp.bounds.assign(2, {});
  EXPECT_EQ(solve_lp(lp, {}).status, SolveStatus::Unbounded);
}

TEST(Simplex, Infeasible) {
  LinearProgram lp;
  lp.objective = {1};
  lp.matrix = SparseMatrix(2, 1, {{0, 0, 1}, {1, 0, 1}});
  lp.rhs = {1, 2};
  lp.row_types = {RowType::LessEqual, RowType::GreaterEqual};
  lp.bounds.assign(1, {});
  EXPECT_EQ(solve_lp(lp, {}).status, SolveStatus::Infeasible);
}

TEST(Simplex, OddCycleVertexCover) {
  for (std::size_t k : {3u, 5u, 7u}) {
    const auto out = solve_lp(lp_vertex_cover(cycle(k)), {});
    ASSERT_EQ(out.status, SolveStatus::Optimal);
    EXPECT_NEAR(out.objective, static_cast<double>(k) / 2.0, 1e-9);
  }
}

TEST(Simplex, RandomLpsMatchBruteForce) {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto lp = hbtest::random_lp(seed, 4, 7);
    const auto expect = hbtest::brute_force_optimum(lp);
    ASSERT_TRUE(expect.has_value());
    for (auto rule : {PivotRule::dantzig(), PivotRule::steepest_edge(), PivotRule::random(seed)}) {
      SimplexOptions o;
      o.rule = rule;
      const auto out = solve_lp(lp, o);
      ASSERT_EQ(out.status, SolveStatus::Optimal) << "seed " << seed;
      EXPECT_TRUE(hbtest::rel_close(out.objective, *expect, 1e-8))
          << "seed " << seed << ": " << out.objective << " vs " << *expect;
      EXPECT_LT(lp.max_violation(out.x), 1e-8);
    }
  }
}

TEST(Simplex, ReducedCostsMatchDense) {
  const auto lp = hbtest::random_lp(42, 6, 9);
  const auto sf = standardize(lp);
  RevisedSimplex s(sf, {});
  ASSERT_EQ(s.solve().status, SolveStatus::Optimal);
  const auto a = hbtest::dense(sf.A);
  const auto& basis = s.basic();
  const auto nonbasic = s.nonbasic();
  const auto m = static_cast<Eigen::Index>(sf.num_rows());
  Eigen::MatrixXd b(m, m);
  Eigen::VectorXd cb(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    b.col(i) = a.col(static_cast<Eigen::Index>(basis[static_cast<std::size_t>(i)]));
    cb(i) = sf.c[basis[static_cast<std::size_t>(i)]];
  }
  const Eigen::VectorXd y = b.transpose().fullPivLu().solve(cb);
  const auto reduced = s.reduced_costs();
  ASSERT_EQ(reduced.size(), nonbasic.size());
  for (std::size_t k = 0; k < nonbasic.size(); ++k) {
    const double ref = sf.c[nonbasic[k]] - y.dot(a.col(static_cast<Eigen::Index>(nonbasic[k])));
    EXPECT_NEAR(reduced[k], ref, 1e-10);
  }
}

TEST(Simplex, ReducedCostsIdentityBasis) {
  // c_B = 0 on the slack basis, so c_bar_N = c_N
  LinearProgram lp;
  lp.objective = {2, -1, 3};
  lp.matrix = SparseMatrix(2, 3, {{0, 0, 1}, {0, 1, 2}, {1, 2, 1}, {1, 0, 4}});
  lp.rhs = {4, 5};
  lp.row_types = {RowType::LessEqual, RowType::LessEqual};
  lp.bounds.assign(3, {});
  const auto sf = standardize(lp);
  RevisedSimplex s(sf, {});
  ASSERT_TRUE(s.install_basis({3, 4}));
  const auto r = s.reduced_costs();
  EXPECT_EQ(r, (std::vector<double>{2, -1, 3}));
}

// Ratio test, pricing and tie-breaking examples.
TEST(Pricing, ChooseColumn) {
  std::mt19937_64 rng(1);
  const auto none = [](std::size_t) { return 1.0; };
  const std::vector<double> c1{-3, -1, 2};
  EXPECT_EQ(choose_column(c1, PivotRule::Kind::Dantzig, 1e-9, none, rng), 0u);
  const std::vector<double> c2{0, 1, 2};
  EXPECT_FALSE(choose_column(c2, PivotRule::Kind::Dantzig, 1e-9, none, rng).has_value());
  EXPECT_FALSE(choose_column(c2, PivotRule::Kind::Random, 1e-9, none, rng).has_value());
  const std::vector<double> c3{-1, -1};
  const auto norms = [](std::size_t i) { return i == 0 ? 10.0 : 1.0; };
  EXPECT_EQ(choose_column(c3, PivotRule::Kind::SteepestEdge, 1e-9, norms, rng), 1u);
}

TEST(Pricing, RandomIsSeededAndAmongImproving) {
  const std::vector<double> c{-1, 2, -1, -5, 0};
  const auto none = [](std::size_t) { return 1.0; };
  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 50; ++i) {
    const auto x = choose_column(c, PivotRule::Kind::Random, 1e-9, none, a);
    const auto y = choose_column(c, PivotRule::Kind::Random, 1e-9, none, b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(x, y);
    EXPECT_LT(c[*x], 0.0);
  }
}

TEST(RatioTest, Examples) {
  const std::vector<std::size_t> idx{4, 2};
  const std::vector<double> x1{2, 4}, u1{1, 1};
  auto r = ratio_test(x1, u1, idx);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->row, 0u);
  EXPECT_DOUBLE_EQ(r->theta, 2.0);
  const std::vector<double> u2{-1, 0};
  EXPECT_FALSE(ratio_test(x1, u2, idx).has_value());
  const std::vector<double> x3{2, 2};
  r = ratio_test(x3, u1, idx);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->row, 1u);  // basic variable 2 < 4
}

TEST(Simplex, UniformIndexInRange) {
  std::mt19937_64 rng(9);
  std::vector<int> hits(3, 0);
  for (int i = 0; i < 3000; ++i) ++hits[uniform_index(rng, 3)];
  for (int h : hits) EXPECT_GT(h, 850);
}

TEST(Simplex, ObserverDoesNotChangeTrajectory) {
  const auto lp = lp_max_clique(erdos_renyi(14, 0.4, 3));
  SimplexOptions plain;
  plain.rule = PivotRule::random(11);
  const auto a = solve_lp(lp, plain);
  MetricsRecorder rec;
  SimplexOptions watched = plain;
  watched.observer = &rec;
  const auto b = solve_lp(lp, watched);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(rec.records().size(), b.phase2_iterations);
}

TEST(Simplex, FactorizationMatchesDenseSolve) {
  const auto lp = hbtest::random_lp(8, 6, 9);
  const auto sf = standardize(lp);
  RevisedSimplex s(sf, {});
  ASSERT_EQ(s.solve().status, SolveStatus::Optimal);
  const auto b = hbtest::dense(s.basis_matrix());
  std::vector<double> rhs(sf.num_rows());
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = static_cast<double>(i) + 1.0;
  auto x = rhs;
  s.factorization().ftran(x);
  auto y = rhs;
  s.factorization().btran(y);
  const Eigen::Map<Eigen::VectorXd> r(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  const Eigen::Map<Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  const Eigen::Map<Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
  EXPECT_LT((b * xv - r).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((b.transpose() * yv - r).cwiseAbs().maxCoeff(), 1e-10);
}

// B_1 = B_0 with column r replaced: FTRAN/BTRAN through one eta must match dense.
TEST(Factorization, EtaUpdateMatchesDense) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(6, 7) * 3.0;
  for (int k = 0; k < 14; ++k) d(static_cast<int>(rng() % 6), static_cast<int>(rng() % 7)) += u(rng);
  const auto a = hbtest::sparse(d);
  Factorization f;
  const std::vector<std::size_t> basis{0, 1, 2, 3, 4, 5};
  ASSERT_TRUE(f.factor(a, basis));
  std::vector<double> col(6);
  for (int i = 0; i < 6; ++i) col[static_cast<std::size_t>(i)] = d(i, 6);
  auto w = col;
  f.ftran(w);
  std::size_t r = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (std::abs(w[i]) > std::abs(w[r])) r = i;
  }
  ASSERT_GT(std::abs(w[r]), 1e-6);
  f.update(r, w);
  EXPECT_EQ(f.eta_count(), 1u);
  Eigen::MatrixXd b1 = d.leftCols(6);
  b1.col(static_cast<int>(r)) = d.col(6);
  std::vector<double> rhs{1, -2, 3, 0.5, 4, -1};
  auto x = rhs, y = rhs;
  f.ftran(x);
  f.btran(y);
  const Eigen::Map<Eigen::VectorXd> rv(rhs.data(), 6), xv(x.data(), 6), yv(y.data(), 6);
  EXPECT_LT((b1 * xv - rv).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((b1.transpose() * yv - rv).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Factorization, SingularBasisRejected) {
  SparseMatrix a(2, 2, {{0, 0, 1}, {1, 0, 1}, {0, 1, 2}, {1, 1, 2}});
  Factorization f;
  const std::vector<std::size_t> basis{0, 1};
  EXPECT_FALSE(f.factor(a, basis));
}
