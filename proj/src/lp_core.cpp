#include "hybridbench/lp_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hybridbench {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries)
    : rows_(rows), cols_(cols) {
  for (const Triplet& t : entries) {
    if (t.row >= rows || t.col >= cols) {
      throw LpError("sparse entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                    ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (!std::isfinite(t.value)) {
      throw LpError("non-finite coefficient at (" + std::to_string(t.row) + ", " +
                    std::to_string(t.col) + ")");
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });

  col_start_.assign(cols + 1, 0);
  row_index_.reserve(entries.size());
  values_.reserve(entries.size());
  std::size_t i = 0;
  for (std::size_t col = 0; col < cols; ++col) {
    col_start_[col] = values_.size();
    while (i < entries.size() && entries[i].col == col) {
      const std::size_t row = entries[i].row;
      double sum = 0.0;
      while (i < entries.size() && entries[i].col == col && entries[i].row == row) {
        sum += entries[i].value;
        ++i;
      }
      if (sum != 0.0) {
        row_index_.push_back(row);
        values_.push_back(sum);
      }
    }
  }
  col_start_[cols] = values_.size();
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<Triplet> entries;
  entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) entries.push_back({i, i, 1.0});
  return SparseMatrix(n, n, std::move(entries));
}

double SparseMatrix::coeff(std::size_t row, std::size_t col) const {
  const auto rows = column_rows(col);
  const auto it = std::lower_bound(rows.begin(), rows.end(), row);
  if (it == rows.end() || *it != row) return 0.0;
  return column_values(col)[static_cast<std::size_t>(it - rows.begin())];
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(rows_, 0.0);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (x[j] == 0.0) continue;
    for (std::size_t p = col_start_[j]; p < col_start_[j + 1]; ++p) {
      y[row_index_[p]] += values_[p] * x[j];
    }
  }
  return y;
}

double SparseMatrix::column_dot(std::size_t col, std::span<const double> y) const {
  double sum = 0.0;
  for (std::size_t p = col_start_[col]; p < col_start_[col + 1]; ++p) {
    sum += values_[p] * y[row_index_[p]];
  }
  return sum;
}

SparseMatrix SparseMatrix::select_columns(std::span<const std::size_t> columns) const {
  SparseMatrix out;
  out.rows_ = rows_;
  out.cols_ = columns.size();
  out.col_start_.assign(columns.size() + 1, 0);
  for (std::size_t k = 0; k < columns.size(); ++k) {
    const std::size_t j = columns[k];
    out.col_start_[k] = out.values_.size();
    out.row_index_.insert(out.row_index_.end(), row_index_.begin() + col_start_[j],
                          row_index_.begin() + col_start_[j + 1]);
    out.values_.insert(out.values_.end(), values_.begin() + col_start_[j],
                       values_.begin() + col_start_[j + 1]);
  }
  out.col_start_[columns.size()] = out.values_.size();
  return out;
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t j = 0; j < cols_; ++j) {
    for (std::size_t p = col_start_[j]; p < col_start_[j + 1]; ++p) {
      out.push_back({row_index_[p], j, values_[p]});
    }
  }
  return out;
}

std::vector<std::size_t> SparseMatrix::row_counts() const {
  std::vector<std::size_t> counts(rows_, 0);
  for (std::size_t r : row_index_) ++counts[r];
  return counts;
}

std::vector<double> column_norms(const SparseMatrix& m) {
  std::vector<double> norms(m.cols(), 0.0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double sum = 0.0;
    for (double v : m.column_values(j)) sum += v * v;
    norms[j] = std::sqrt(sum);
  }
  return norms;
}

double matrix_norm_1(const SparseMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double sum = 0.0;
    for (double v : m.column_values(j)) sum += std::abs(v);
    best = std::max(best, sum);
  }
  return best;
}

double matrix_max_abs(const SparseMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (double v : m.column_values(j)) best = std::max(best, std::abs(v));
  }
  return best;
}

Sparsity sparsity(const SparseMatrix& m) {
  Sparsity s;
  for (std::size_t j = 0; j < m.cols(); ++j) s.max_col_nnz = std::max(s.max_col_nnz, m.column_nnz(j));
  for (std::size_t c : m.row_counts()) s.max_row_nnz = std::max(s.max_row_nnz, c);
  s.d = std::max(s.max_col_nnz, s.max_row_nnz);
  return s;
}

void LinearProgram::validate() const {
  const std::size_t n = matrix.cols();
  const std::size_t m = matrix.rows();
  if (objective.size() != n) {
    throw LpError("objective has " + std::to_string(objective.size()) + " entries, matrix has " +
                  std::to_string(n) + " columns");
  }
  if (rhs.size() != m) {
    throw LpError("rhs has " + std::to_string(rhs.size()) + " entries, matrix has " +
                  std::to_string(m) + " rows");
  }
  if (row_types.size() != m) throw LpError("row type count does not match row count");
  if (bounds.size() != n) throw LpError("bound count does not match column count");
  for (std::size_t j = 0; j < n; ++j) {
    const auto& bd = bounds[j];
    if (std::isnan(bd.lower) || std::isnan(bd.upper) || bd.lower == kInfinity ||
        bd.upper == -kInfinity || bd.lower > bd.upper) {
      throw LpError("invalid bounds on column " + std::to_string(j));
    }
    if (!std::isfinite(objective[j])) throw LpError("non-finite objective coefficient");
  }
  for (double v : rhs) {
    if (!std::isfinite(v)) throw LpError("non-finite right-hand side");
  }
}

double LinearProgram::evaluate(std::span<const double> x) const {
  double value = objective_offset;
  for (std::size_t j = 0; j < objective.size(); ++j) value += objective[j] * x[j];
  return value;
}

double LinearProgram::max_violation(std::span<const double> x) const {
  const std::vector<double> ax = matrix.multiply(x);
  double worst = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    const double diff = ax[i] - rhs[i];
    switch (row_types[i]) {
      case RowType::Equal: worst = std::max(worst, std::abs(diff)); break;
      case RowType::LessEqual: worst = std::max(worst, diff); break;
      case RowType::GreaterEqual: worst = std::max(worst, -diff); break;
    }
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    worst = std::max(worst, bounds[j].lower - x[j]);
    worst = std::max(worst, x[j] - bounds[j].upper);
  }
  return worst;
}

StandardFormLP standardize(const LinearProgram& lp) {
  lp.validate();
  const std::size_t m = lp.num_rows();
  const std::size_t n = lp.num_cols();

  const auto counts = lp.matrix.row_counts();
  for (std::size_t i = 0; i < m; ++i) {
    if (counts[i] == 0 && lp.row_types[i] == RowType::Equal) {
      const std::string name = i < lp.row_names.size() ? lp.row_names[i] : std::to_string(i);
      throw LpError("equality row '" + name + "' has no finite coefficients");
    }
  }

  StandardFormLP sf;
  sf.original_vars = n;
  sf.original_rows = m;
  sf.negated = lp.sense == Sense::Maximize;
  const double sign = sf.negated ? -1.0 : 1.0;

  std::vector<double> b = lp.rhs;
  std::vector<Triplet> entries;
  entries.reserve(lp.matrix.nnz() + 2 * m + n);
  double constant = lp.objective_offset;

  // Structural columns.
  std::size_t col = 0;
  std::vector<std::size_t> capped;  // structural columns needing a bound row
  sf.mapping.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const VariableBounds& bd = lp.bounds[j];
    VariableMap& map = sf.mapping[j];
    const auto rows = lp.matrix.column_rows(j);
    const auto vals = lp.matrix.column_values(j);
    if (std::isfinite(bd.lower)) {
      map.kind = VariableMap::Kind::Shifted;
      map.anchor = bd.lower;
      map.column = col;
      for (std::size_t p = 0; p < rows.size(); ++p) {
        entries.push_back({rows[p], col, vals[p]});
        b[rows[p]] -= vals[p] * bd.lower;
      }
      sf.c.push_back(sign * lp.objective[j]);
      constant += lp.objective[j] * bd.lower;
      if (std::isfinite(bd.upper)) {
        map.upper_span = bd.upper - bd.lower;
        capped.push_back(j);
      }
      ++col;
    } else if (std::isfinite(bd.upper)) {
      map.kind = VariableMap::Kind::Reflected;
      map.anchor = bd.upper;
      map.column = col;
      for (std::size_t p = 0; p < rows.size(); ++p) {
        entries.push_back({rows[p], col, -vals[p]});
        b[rows[p]] -= vals[p] * bd.upper;
      }
      sf.c.push_back(-sign * lp.objective[j]);
      constant += lp.objective[j] * bd.upper;
      ++col;
    } else {
      map.kind = VariableMap::Kind::Split;
      map.column = col;
      map.negative = col + 1;
      for (std::size_t p = 0; p < rows.size(); ++p) {
        entries.push_back({rows[p], col, vals[p]});
        entries.push_back({rows[p], col + 1, -vals[p]});
      }
      sf.c.push_back(sign * lp.objective[j]);
      sf.c.push_back(-sign * lp.objective[j]);
      col += 2;
    }
  }
  sf.structural_cols = col;

  // Row slacks / surpluses.
  sf.row_slack.assign(m, StandardFormLP::npos);
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.row_types[i] == RowType::Equal) continue;
    entries.push_back({i, col, lp.row_types[i] == RowType::LessEqual ? 1.0 : -1.0});
    sf.c.push_back(0.0);
    sf.row_slack[i] = col;
    ++col;
  }

  // Bound rows y + s = upper - lower.
  std::size_t row = m;
  for (std::size_t j : capped) {
    const VariableMap& map = sf.mapping[j];
    entries.push_back({row, map.column, 1.0});
    entries.push_back({row, col, 1.0});
    b.push_back(map.upper_span);
    sf.c.push_back(0.0);
    sf.bound_row_slack.push_back(col);
    ++col;
    ++row;
  }

  sf.slack_vars = col - sf.structural_cols;
  sf.A = SparseMatrix(row, col, std::move(entries));
  sf.b = std::move(b);
  sf.objective_constant = sign * constant;
  return sf;
}

std::vector<double> StandardFormLP::to_original(std::span<const double> y) const {
  std::vector<double> x(original_vars, 0.0);
  for (std::size_t j = 0; j < original_vars; ++j) {
    const VariableMap& map = mapping[j];
    switch (map.kind) {
      case VariableMap::Kind::Shifted: x[j] = map.anchor + y[map.column]; break;
      case VariableMap::Kind::Reflected: x[j] = map.anchor - y[map.column]; break;
      case VariableMap::Kind::Split: x[j] = y[map.column] - y[map.negative]; break;
    }
  }
  return x;
}

std::vector<double> StandardFormLP::from_original(const LinearProgram& lp,
                                                  std::span<const double> x) const {
  std::vector<double> y(num_cols(), 0.0);
  for (std::size_t j = 0; j < original_vars; ++j) {
    const VariableMap& map = mapping[j];
    switch (map.kind) {
      case VariableMap::Kind::Shifted: y[map.column] = x[j] - map.anchor; break;
      case VariableMap::Kind::Reflected: y[map.column] = map.anchor - x[j]; break;
      case VariableMap::Kind::Split:
        y[map.column] = std::max(x[j], 0.0);
        y[map.negative] = std::max(-x[j], 0.0);
        break;
    }
  }
  const std::vector<double> ax = lp.matrix.multiply(x);
  for (std::size_t i = 0; i < original_rows; ++i) {
    if (row_slack[i] == npos) continue;
    const double residual = lp.rhs[i] - ax[i];
    y[row_slack[i]] = lp.row_types[i] == RowType::LessEqual ? residual : -residual;
  }
  std::size_t k = 0;
  for (std::size_t j = 0; j < original_vars; ++j) {
    if (!std::isfinite(mapping[j].upper_span) || mapping[j].kind != VariableMap::Kind::Shifted) {
      continue;
    }
    y[bound_row_slack[k]] = mapping[j].upper_span - y[mapping[j].column];
    ++k;
  }
  return y;
}

double StandardFormLP::original_objective(double standard_value) const {
  const double min_value = standard_value + objective_constant;
  return negated ? -min_value : min_value;
}

}  // namespace hybridbench
