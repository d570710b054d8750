#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hybridbench/mps.hpp"

namespace hybridbench {
namespace {

std::string clean_name(const std::string& name, const std::string& fallback) {
  if (name.empty()) return fallback;
  std::string out = name;
  for (char& ch : out) {
    if (ch == ' ' || ch == '\t') ch = '_';
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string write_mps(const LinearProgram& lp) {
  lp.validate();
  const std::size_t m = lp.num_rows();
  const std::size_t n = lp.num_cols();
  std::vector<std::string> rows(m);
  std::vector<std::string> cols(n);
  for (std::size_t i = 0; i < m; ++i) {
    rows[i] = clean_name(i < lp.row_names.size() ? lp.row_names[i] : "", "R" + std::to_string(i));
  }
  for (std::size_t j = 0; j < n; ++j) {
    cols[j] =
        clean_name(j < lp.column_names.size() ? lp.column_names[j] : "", "C" + std::to_string(j));
  }
  const std::string obj = "obj__";

  std::string out;
  out += "NAME " + clean_name(lp.name, "LP") + "\n";
  if (lp.sense == Sense::Maximize) out += "OBJSENSE\n    MAX\n";
  out += "ROWS\n N  " + obj + "\n";
  for (std::size_t i = 0; i < m; ++i) {
    const char* t = lp.row_types[i] == RowType::Equal       ? " E  "
                    : lp.row_types[i] == RowType::LessEqual ? " L  "
                                                            : " G  ";
    out += t + rows[i] + "\n";
  }
  out += "COLUMNS\n";
  for (std::size_t j = 0; j < n; ++j) {
    // Always emit the objective entry so empty columns stay declared.
    out += "    " + cols[j] + " " + obj + " " + num(lp.objective[j]) + "\n";
    const auto r = lp.matrix.column_rows(j);
    const auto v = lp.matrix.column_values(j);
    for (std::size_t p = 0; p < r.size(); ++p) {
      out += "    " + cols[j] + " " + rows[r[p]] + " " + num(v[p]) + "\n";
    }
  }
  out += "RHS\n";
  if (lp.objective_offset != 0.0) out += "    RHS " + obj + " " + num(-lp.objective_offset) + "\n";
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.rhs[i] != 0.0) out += "    RHS " + rows[i] + " " + num(lp.rhs[i]) + "\n";
  }
  out += "BOUNDS\n";
  for (std::size_t j = 0; j < n; ++j) {
    const VariableBounds& b = lp.bounds[j];
    const bool lo_inf = std::isinf(b.lower);
    const bool hi_inf = std::isinf(b.upper);
    if (lo_inf && hi_inf) {
      out += " FR BND " + cols[j] + "\n";
    } else if (!lo_inf && !hi_inf && b.lower == b.upper) {
      out += " FX BND " + cols[j] + " " + num(b.lower) + "\n";
    } else {
      if (lo_inf) {
        out += " MI BND " + cols[j] + "\n";
      } else if (b.lower != 0.0) {
        out += " LO BND " + cols[j] + " " + num(b.lower) + "\n";
      }
      if (!hi_inf) out += " UP BND " + cols[j] + " " + num(b.upper) + "\n";
    }
  }
  out += "ENDATA\n";
  return out;
}

}  // namespace hybridbench
