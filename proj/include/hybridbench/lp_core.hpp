#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybridbench {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

/// Column-compressed sparse matrix. Immutable after construction.
///
/// Row indices are strictly increasing within a column and every stored value
/// is finite and nonzero. Duplicate (row, col) input entries are summed; entries
/// that cancel to zero are dropped.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const std::size_t> column_rows(std::size_t col) const {
    return {row_index_.data() + col_start_[col], col_start_[col + 1] - col_start_[col]};
  }
  std::span<const double> column_values(std::size_t col) const {
    return {values_.data() + col_start_[col], col_start_[col + 1] - col_start_[col]};
  }
  std::size_t column_nnz(std::size_t col) const { return col_start_[col + 1] - col_start_[col]; }

  /// Coefficient lookup by binary search in the column; zero if not stored.
  double coeff(std::size_t row, std::size_t col) const;

  /// y = A x
  std::vector<double> multiply(std::span<const double> x) const;
  /// dot(A_col, y)
  double column_dot(std::size_t col, std::span<const double> y) const;

  SparseMatrix select_columns(std::span<const std::size_t> columns) const;
  std::vector<Triplet> triplets() const;
  std::vector<std::size_t> row_counts() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> col_start_{0};
  std::vector<std::size_t> row_index_;
  std::vector<double> values_;
};

struct Sparsity {
  std::size_t max_col_nnz = 0;  // d_c
  std::size_t max_row_nnz = 0;  // d_r
  std::size_t d = 0;            // max(d_c, d_r)
};

std::vector<double> column_norms(const SparseMatrix& m);
/// Maximum absolute column sum.
double matrix_norm_1(const SparseMatrix& m);
double matrix_max_abs(const SparseMatrix& m);
Sparsity sparsity(const SparseMatrix& m);

enum class RowType { Equal, LessEqual, GreaterEqual };
enum class Sense { Minimize, Maximize };

struct VariableBounds {
  double lower = 0.0;
  double upper = kInfinity;
};

/// A linear program in general row form: optimize c^T x subject to per-row
/// relations A_i x (=|<=|>=) b_i and per-variable bounds.
struct LinearProgram {
  std::string name;
  Sense sense = Sense::Minimize;
  std::vector<double> objective;
  double objective_offset = 0.0;
  SparseMatrix matrix;
  std::vector<double> rhs;
  std::vector<RowType> row_types;
  std::vector<VariableBounds> bounds;
  std::vector<std::string> row_names;
  std::vector<std::string> column_names;

  std::size_t num_rows() const { return matrix.rows(); }
  std::size_t num_cols() const { return matrix.cols(); }

  /// Throws LpError when dimensions or bounds are inconsistent.
  void validate() const;
  /// Objective value including the constant offset.
  double evaluate(std::span<const double> x) const;
  /// Largest violation of any row relation or variable bound.
  double max_violation(std::span<const double> x) const;
};

/// How one original variable is represented by standard-form columns.
struct VariableMap {
  enum class Kind { Shifted, Reflected, Split };
  Kind kind = Kind::Shifted;
  std::size_t column = 0;     // x = lower + y, x = upper - y, or x = y+ - y-
  std::size_t negative = 0;   // y- column for Split
  double anchor = 0.0;        // lower (Shifted) or upper (Reflected)
  double upper_span = kInfinity;  // finite when a bound row caps the column
};

/// min c^T y subject to A y = b, y >= 0, plus the bookkeeping to map back.
struct StandardFormLP {
  std::vector<double> c;
  SparseMatrix A;
  std::vector<double> b;
  /// Constant added to c^T y to get the minimization-sense objective.
  double objective_constant = 0.0;
  /// True when the original problem was a maximization (c was negated).
  bool negated = false;
  std::size_t original_vars = 0;
  std::size_t structural_cols = 0;  // columns representing original variables
  std::size_t slack_vars = 0;
  std::size_t original_rows = 0;
  std::vector<VariableMap> mapping;
  /// Slack column per original row (index into columns), or npos for equalities.
  std::vector<std::size_t> row_slack;
  /// Slack column of each bound row, in bound-row order.
  std::vector<std::size_t> bound_row_slack;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t num_rows() const { return A.rows(); }
  std::size_t num_cols() const { return A.cols(); }

  std::vector<double> to_original(std::span<const double> y) const;
  /// Lift a point of the original LP; slack columns absorb row residuals.
  std::vector<double> from_original(const LinearProgram& lp, std::span<const double> x) const;
  /// Objective of the original problem (its own sense) for standard-form value c^T y.
  double original_objective(double standard_value) const;
};

StandardFormLP standardize(const LinearProgram& lp);

}  // namespace hybridbench
