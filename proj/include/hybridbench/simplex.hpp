#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hybridbench/factorization.hpp"
#include "hybridbench/lp_core.hpp"

namespace hybridbench {

/// Pivot selection. Random draws from std::mt19937_64 seeded with `seed`
/// through `uniform_index`, so sequences are identical across platforms.
struct PivotRule {
  enum class Kind { Dantzig, SteepestEdge, Random };
  Kind kind = Kind::Dantzig;
  std::uint64_t seed = 0;

  static PivotRule dantzig() { return {Kind::Dantzig, 0}; }
  static PivotRule steepest_edge() { return {Kind::SteepestEdge, 0}; }
  static PivotRule random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

const char* to_string(PivotRule::Kind kind);
std::optional<PivotRule::Kind> parse_pivot_kind(const std::string& name);

/// Unbiased draw from [0, n) by rejection; n > 0.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);

/// Index into `reduced` of the entering candidate, or nullopt if none has
/// reduced cost below -tol. `edge_norm(i)` returns ||B^{-1} A_k|| for candidate i
/// and is only called by steepest edge.
std::optional<std::size_t> choose_column(std::span<const double> reduced, PivotRule::Kind rule,
                                         double tol,
                                         const std::function<double(std::size_t)>& edge_norm,
                                         std::mt19937_64& rng);

struct RatioResult {
  std::size_t row = 0;
  double theta = 0.0;
};

/// min over u_i > 1e-9 of x_B[i]/u_i; ties go to the smaller basic variable index.
/// nullopt means the direction is unbounded.
std::optional<RatioResult> ratio_test(std::span<const double> x_basic, std::span<const double> u,
                                      std::span<const std::size_t> basic_index);

inline constexpr double kPivotTolerance = 1e-9;

/// State handed to the observer before each Phase-II basis change.
struct IterationView {
  std::size_t iteration = 0;
  std::size_t n = 0;  // columns the basis is drawn from
  std::size_t m = 0;
  const SparseMatrix& matrix;
  std::span<const std::size_t> basis;
  std::span<const double> cost;
  std::span<const std::size_t> nonbasic;
  std::span<const double> reduced;  // aligned with nonbasic
  std::size_t entering = 0;         // column index
  std::span<const double> u;        // B^{-1} A_entering
  std::size_t leaving_row = 0;
  double theta = 0.0;
  std::span<const double> x_basic;
  const Factorization& factor;
  double objective = 0.0;
  double eps_opt = 0.0;
  PivotRule::Kind rule = PivotRule::Kind::Dantzig;
};

class SimplexObserver {
 public:
  virtual ~SimplexObserver() = default;
  virtual void before_pivot(const IterationView& view) = 0;
  /// Called once the pivot completed, with the pivot's wall time (observer excluded).
  virtual void after_pivot(std::size_t iteration, double seconds) {
    (void)iteration;
    (void)seconds;
  }
};

struct SolveLimits {
  std::size_t max_iterations = 10'000'000;
  double time_limit_seconds = 1800.0;
};

struct SimplexOptions {
  PivotRule rule;
  double eps_opt = 1e-3;
  SolveLimits limits;
  SimplexObserver* observer = nullptr;
  std::size_t refactor_interval = 50;
  std::size_t bland_after = 200;  // consecutive degenerate pivots
};

enum class SolveStatus { Optimal, Unbounded, Infeasible, IterationLimit, TimeLimit, NumericalFailure };
const char* to_string(SolveStatus s);

struct SolveOutcome {
  SolveStatus status = SolveStatus::NumericalFailure;
  std::vector<double> x;           // original variables
  std::vector<double> y;           // standard-form columns
  double objective = 0.0;          // original sense, offset included
  std::size_t iterations = 0;      // Phase I + Phase II
  std::size_t phase2_iterations = 0;
  std::size_t refactorizations = 0;
  std::string diagnostic;
};

/// Two-phase revised primal simplex on a standard-form LP.
class RevisedSimplex {
 public:
  RevisedSimplex(const StandardFormLP& lp, SimplexOptions options);

  SolveOutcome solve();

  /// Install an explicit basis of structural/slack columns (testing aid).
  bool install_basis(std::vector<std::size_t> basis);
  const std::vector<std::size_t>& basic() const { return basis_; }
  std::vector<std::size_t> nonbasic() const;
  /// c_N - (c_B^T B^{-1}) A_N over nonbasic(), using the Phase-II objective.
  std::vector<double> reduced_costs() const;
  std::vector<double> x_basic() const { return x_basic_; }
  std::vector<double> ftran_column(std::size_t col) const;
  SparseMatrix basis_matrix() const { return matrix_.select_columns(basis_); }
  const Factorization& factorization() const { return factor_; }

 private:
  enum class Phase { One, Two };
  enum class Step { Continue, Optimal, Unbounded, Limit, Failure };

  Step iterate(Phase phase);
  bool refactor();
  void recompute_x();
  void compute_reduced(std::span<const double> cost, std::vector<std::size_t>& cols,
                       std::vector<double>& reduced) const;
  bool drive_out_artificials();
  double objective(std::span<const double> cost) const;
  double elapsed() const;
  std::vector<double> solution() const;

  const StandardFormLP& lp_;
  SimplexOptions opt_;
  SparseMatrix matrix_;  // A with artificial columns appended
  std::size_t n_ = 0;    // structural + slack columns
  std::size_t m_ = 0;
  std::vector<double> phase1_cost_;
  std::vector<double> phase2_cost_;
  std::vector<std::size_t> basis_;
  std::vector<std::ptrdiff_t> position_;  // column -> basis slot or -1
  std::vector<char> enterable_;
  std::vector<double> x_basic_;
  Factorization factor_;
  std::mt19937_64 rng_;
  std::size_t total_iterations_ = 0;
  std::size_t phase2_iterations_ = 0;
  std::size_t degenerate_run_ = 0;
  bool bland_ = false;
  std::string diagnostic_;
  double start_ = 0.0;
  std::size_t locked_artificials_ = 0;
};

/// Convenience wrapper: standardize, solve and map back.
SolveOutcome solve_lp(const LinearProgram& lp, SimplexOptions options);

}  // namespace hybridbench
