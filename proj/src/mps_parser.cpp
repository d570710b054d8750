#include <zlib.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "hybridbench/mps.hpp"

namespace hybridbench {
namespace {

// Bound magnitudes at or above this are read as infinite (common MPS practice).
constexpr double kMpsInfinity = 1e30;

enum class Section { None, Rows, Columns, Rhs, Ranges, Bounds, ObjSense, Done };

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Non-empty fields at the classic fixed-format positions 2-3, 5-12, 15-22,
// 25-36, 40-47, 50-61 (1-based).
std::vector<std::string_view> split_fixed(std::string_view line) {
  static constexpr std::size_t kStart[] = {1, 4, 14, 24, 39, 49};
  static constexpr std::size_t kEnd[] = {3, 12, 22, 36, 47, 61};
  std::vector<std::string_view> out;
  for (std::size_t f = 0; f < 6; ++f) {
    if (kStart[f] >= line.size()) break;
    const std::size_t end = std::min(kEnd[f], line.size());
    const auto field = trim(line.substr(kStart[f], end - kStart[f]));
    if (!field.empty()) out.push_back(field);
  }
  return out;
}

std::optional<double> parse_number(std::string_view token) {
  if (token.empty() || token.size() > 64) return std::nullopt;
  std::string buf(token);
  for (char& ch : buf) {
    if (ch == 'D' || ch == 'd') ch = 'E';
  }
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || std::isnan(v)) return std::nullopt;
  return v;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& ch : out) {
    if (ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 'a' + 'A');
  }
  return out;
}

class Parser {
 public:
  MpsDocument run(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size() && section_ != Section::Done) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      std::string_view line = text.substr(pos, nl - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no_;
      handle(line);
      if (nl == text.size()) break;
      pos = nl + 1;
    }
    if (section_ != Section::Done) doc_.warnings.push_back("missing ENDATA; accepted input as-is");
    if (doc_.objective_row == MpsDocument::npos) {
      doc_.warnings.push_back("no objective (N) row; objective is zero");
    }
    return std::move(doc_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw MpsError(line_no_, what); }

  void handle(std::string_view line) {
    if (line.empty() || line.front() == '*') return;
    for (char ch : line) {
      if (static_cast<unsigned char>(ch) < 0x20 && ch != '\t') fail("control character in input");
    }
    const auto tokens = split_ws(line);
    if (tokens.empty()) return;
    if (line.front() != ' ' && line.front() != '\t') {
      header(tokens);
      return;
    }
    switch (section_) {
      case Section::None: fail("data line before any section header");
      case Section::Rows: row_line(line, tokens); break;
      case Section::Columns: column_line(line, tokens); break;
      case Section::Rhs: value_line(line, tokens, doc_.rhs, "RHS"); break;
      case Section::Ranges: value_line(line, tokens, doc_.ranges, "RANGES"); break;
      case Section::Bounds: bound_line(line, tokens); break;
      case Section::ObjSense: sense(tokens[0]); break;
      case Section::Done: break;
    }
  }

  void header(const std::vector<std::string_view>& tokens) {
    const std::string key = upper(tokens[0]);
    if (key == "NAME") {
      if (tokens.size() > 1) doc_.name = std::string(tokens[1]);
      section_ = Section::None;
    } else if (key == "ROWS") {
      section_ = Section::Rows;
    } else if (key == "COLUMNS") {
      section_ = Section::Columns;
    } else if (key == "RHS") {
      section_ = Section::Rhs;
    } else if (key == "RANGES") {
      section_ = Section::Ranges;
    } else if (key == "BOUNDS") {
      section_ = Section::Bounds;
    } else if (key == "OBJSENSE") {
      section_ = Section::ObjSense;
      if (tokens.size() > 1) sense(tokens[1]);
    } else if (key == "ENDATA") {
      section_ = Section::Done;
    } else {
      fail("unknown section '" + std::string(tokens[0]) + "'");
    }
  }

  void sense(std::string_view token) {
    const std::string s = upper(token);
    if (s == "MAX" || s == "MAXIMIZE") {
      doc_.maximize = true;
    } else if (s == "MIN" || s == "MINIMIZE") {
      doc_.maximize = false;
    } else {
      fail("unknown objective sense '" + std::string(token) + "'");
    }
  }

  void row_line(std::string_view line, std::vector<std::string_view> tokens) {
    if (tokens.size() != 2) tokens = split_fixed(line);
    if (tokens.size() != 2) fail("ROWS entry needs a type and a name");
    const std::string type = upper(tokens[0]);
    if (type.size() != 1 || std::string_view("NELG").find(type[0]) == std::string_view::npos) {
      fail("unknown row type '" + std::string(tokens[0]) + "'");
    }
    std::string name(tokens[1]);
    if (row_index_.count(name)) fail("duplicate row '" + name + "'");
    if (type[0] == 'N') {
      if (doc_.objective_row == MpsDocument::npos) {
        doc_.objective_row = doc_.rows.size();
      } else {
        doc_.warnings.push_back("line " + std::to_string(line_no_) + ": extra objective row '" +
                                name + "' ignored");
      }
    }
    row_index_.emplace(name, doc_.rows.size());
    doc_.rows.push_back({std::move(name), type[0]});
  }

  std::size_t row_ref(std::string_view name) const {
    const auto it = row_index_.find(std::string(name));
    if (it == row_index_.end()) fail("reference to undeclared row '" + std::string(name) + "'");
    return it->second;
  }

  double number(std::string_view token) const {
    const auto v = parse_number(token);
    if (!v) fail("malformed number '" + std::string(token) + "'");
    return *v;
  }

  double finite_number(std::string_view token) const {
    const double v = number(token);
    if (!std::isfinite(v)) fail("non-finite value '" + std::string(token) + "'");
    return v;
  }

  std::optional<std::size_t> row_lookup(std::string_view name) const {
    const auto it = row_index_.find(std::string(name));
    if (it == row_index_.end()) return std::nullopt;
    return it->second;
  }

  static std::string unquote(std::string_view s) {
    if (s.size() >= 2 && s.front() == '\'' && s.back() == '\'') s = s.substr(1, s.size() - 2);
    return upper(s);
  }

  // Free-format tokens first; names with embedded blanks only resolve at the
  // fixed positions, so an unresolved name retries the fixed fields.
  bool names_resolve(const std::vector<std::string_view>& t, std::size_t first) const {
    for (std::size_t f = first; f + 1 < t.size(); f += 2) {
      if (!row_lookup(t[f])) return false;
    }
    return true;
  }

  void column_line(std::string_view line, std::vector<std::string_view> tokens) {
    if (tokens.size() >= 3 && unquote(tokens[1]) == "MARKER") {
      const std::string tag = unquote(tokens[2]);
      if (tag == "INTORG") {
        integer_ = true;
      } else if (tag == "INTEND") {
        integer_ = false;
      } else {
        fail("unknown marker " + std::string(tokens[2]));
      }
      return;
    }
    const bool free_ok = (tokens.size() == 3 || tokens.size() == 5) && names_resolve(tokens, 1);
    if (!free_ok) {
      auto fixed = split_fixed(line);
      if ((fixed.size() == 3 || fixed.size() == 5) && names_resolve(fixed, 1)) {
        tokens = std::move(fixed);
      } else if (tokens.size() != 3 && tokens.size() != 5) {
        tokens = std::move(fixed);
      }
    }
    if (tokens.size() != 3 && tokens.size() != 5) fail("COLUMNS entry needs 3 or 5 fields");
    const std::string name(tokens[0]);
    std::size_t col;
    const auto it = col_index_.find(name);
    if (it == col_index_.end()) {
      col = doc_.columns.size();
      col_index_.emplace(name, col);
      doc_.columns.push_back(name);
      if (integer_) doc_.integer_columns.push_back(col);
    } else {
      col = it->second;
    }
    for (std::size_t f = 1; f + 1 < tokens.size(); f += 2) {
      const std::size_t row = row_ref(tokens[f]);
      doc_.entries.push_back({col, row, finite_number(tokens[f + 1])});
    }
  }

  void value_line(std::string_view line, std::vector<std::string_view> tokens,
                  std::vector<MpsValue>& out, const char* section) {
    auto usable = [&](const std::vector<std::string_view>& t) {
      return t.size() >= 2 && t.size() <= 5 && names_resolve(t, t.size() % 2);
    };
    if (!usable(tokens)) {
      auto fixed = split_fixed(line);
      if (usable(fixed) || tokens.size() < 2 || tokens.size() > 5) tokens = std::move(fixed);
    }
    if (tokens.size() < 2 || tokens.size() > 5) {
      fail(std::string(section) + " entry needs 2 to 5 fields");
    }
    // Odd field counts carry a leading set name.
    const std::size_t first = tokens.size() % 2 == 1 ? 1 : 0;
    for (std::size_t f = first; f + 1 < tokens.size(); f += 2) {
      out.push_back({row_ref(tokens[f]), finite_number(tokens[f + 1])});
    }
  }

  std::optional<std::size_t> col_lookup(std::string_view name) const {
    const auto it = col_index_.find(std::string(name));
    if (it == col_index_.end()) return std::nullopt;
    return it->second;
  }

  void bound_line(std::string_view line, std::vector<std::string_view> tokens) {
    auto attempt = [&](const std::vector<std::string_view>& t) -> std::optional<MpsBound> {
      if (t.size() < 2 || t.size() > 4) return std::nullopt;
      const std::string type = upper(t[0]);
      const bool needs_value = type == "UP" || type == "LO" || type == "FX" || type == "LI" ||
                               type == "UI";
      const bool no_value = type == "FR" || type == "MI" || type == "PL";
      if (!needs_value && !no_value && type != "BV") fail("unknown bound type '" + type + "'");
      // Candidate layouts: [type set col val?] or [type col val?].
      for (const std::size_t name_at : {std::size_t{2}, std::size_t{1}}) {
        if (name_at >= t.size()) continue;
        const std::size_t rest = t.size() - name_at - 1;
        if (needs_value && rest != 1) continue;
        if (no_value && rest != 0) continue;
        if (type == "BV" && rest > 1) continue;
        const auto col = col_lookup(t[name_at]);
        if (!col) continue;
        MpsBound b{type, *col, 0.0};
        if (rest == 1) {
          b.value = number(t[name_at + 1]);
        }
        return b;
      }
      return std::nullopt;
    };
    auto bound = attempt(tokens);
    if (!bound) bound = attempt(split_fixed(line));
    if (!bound) fail("BOUNDS entry references an undeclared column or is malformed");
    doc_.bounds.push_back(*bound);
  }

  MpsDocument doc_;
  Section section_ = Section::None;
  std::size_t line_no_ = 0;
  bool integer_ = false;
  std::unordered_map<std::string, std::size_t> row_index_;
  std::unordered_map<std::string, std::size_t> col_index_;
};

std::string gunzip_file(const std::filesystem::path& path) {
  gzFile file = gzopen(path.string().c_str(), "rb");
  if (!file) throw MpsError(0, "cannot open " + path.string());
  std::string out;
  char buf[1 << 15];
  int got;
  while ((got = gzread(file, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(got));
  const bool bad = got < 0;
  gzclose(file);
  if (bad) throw MpsError(0, "gzip stream error in " + path.string());
  return out;
}

}  // namespace

MpsDocument parse_mps(std::string_view text) {
  try {
    return Parser().run(text);
  } catch (const MpsError&) {
    throw;
  } catch (const std::exception& e) {
    throw MpsError(0, e.what());
  }
}

MpsDocument read_mps_file(const std::filesystem::path& path) {
  std::string text;
  if (path.extension() == ".gz") {
    text = gunzip_file(path);
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MpsError(0, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse_mps(text);
}

LinearProgram to_lp(const MpsDocument& doc) {
  LinearProgram lp;
  lp.name = doc.name;
  lp.sense = doc.maximize ? Sense::Maximize : Sense::Minimize;
  const std::size_t n = doc.columns.size();
  lp.column_names = doc.columns;
  lp.objective.assign(n, 0.0);
  lp.bounds.assign(n, VariableBounds{});

  // Constraint rows are the non-N rows, in declaration order.
  std::vector<std::size_t> lp_row(doc.rows.size(), MpsDocument::npos);
  for (std::size_t r = 0; r < doc.rows.size(); ++r) {
    if (doc.rows[r].type == 'N') continue;
    lp_row[r] = lp.row_names.size();
    lp.row_names.push_back(doc.rows[r].name);
    lp.row_types.push_back(doc.rows[r].type == 'E'   ? RowType::Equal
                           : doc.rows[r].type == 'L' ? RowType::LessEqual
                                                     : RowType::GreaterEqual);
  }
  const std::size_t m = lp.row_names.size();
  lp.rhs.assign(m, 0.0);

  std::vector<Triplet> triplets;
  for (const MpsEntry& e : doc.entries) {
    if (e.row == doc.objective_row) {
      lp.objective[e.col] += e.value;
    } else if (lp_row[e.row] != MpsDocument::npos) {
      triplets.push_back({lp_row[e.row], e.col, e.value});
    }
  }
  for (const MpsValue& v : doc.rhs) {
    if (v.row == doc.objective_row) {
      lp.objective_offset = -v.value;
    } else if (lp_row[v.row] != MpsDocument::npos) {
      lp.rhs[lp_row[v.row]] = v.value;
    }
  }

  // Ranges: L row b -> [b-|r|, b]; G row b -> [b, b+|r|]; E row -> [b, b+r] or [b+r, b].
  std::vector<std::optional<double>> range(m);
  for (const MpsValue& v : doc.ranges) {
    if (lp_row[v.row] == MpsDocument::npos) continue;
    range[lp_row[v.row]] = v.value;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!range[i]) continue;
    const double r = *range[i];
    const double b = lp.rhs[i];
    RowType extra_type;
    double extra_rhs;
    switch (lp.row_types[i]) {
      case RowType::LessEqual:
        extra_type = RowType::GreaterEqual;
        extra_rhs = b - std::abs(r);
        break;
      case RowType::GreaterEqual:
        extra_type = RowType::LessEqual;
        extra_rhs = b + std::abs(r);
        break;
      case RowType::Equal:
        if (r == 0.0) continue;
        lp.row_types[i] = r > 0 ? RowType::GreaterEqual : RowType::LessEqual;
        extra_type = r > 0 ? RowType::LessEqual : RowType::GreaterEqual;
        extra_rhs = b + r;
        break;
    }
    const std::size_t row = lp.row_names.size();
    lp.row_names.push_back(lp.row_names[i] + "_rng");
    lp.row_types.push_back(extra_type);
    lp.rhs.push_back(extra_rhs);
    for (const Triplet& t : std::vector<Triplet>(triplets)) {
      if (t.row == i) triplets.push_back({row, t.col, t.value});
    }
  }

  for (const MpsBound& b : doc.bounds) {
    VariableBounds& bd = lp.bounds[b.col];
    const double v = b.value;
    const std::string& t = b.type;
    if (t == "UP" || t == "UI") {
      bd.upper = v >= kMpsInfinity ? kInfinity : v;
      if (v < 0 && bd.lower == 0.0) bd.lower = -kInfinity;
    } else if (t == "LO" || t == "LI") {
      bd.lower = v <= -kMpsInfinity ? -kInfinity : v;
    } else if (t == "FX") {
      bd.lower = bd.upper = v;
    } else if (t == "FR") {
      bd.lower = -kInfinity;
      bd.upper = kInfinity;
    } else if (t == "MI") {
      bd.lower = -kInfinity;
    } else if (t == "PL") {
      bd.upper = kInfinity;
    } else if (t == "BV") {
      bd.lower = 0.0;
      bd.upper = 1.0;
    }
  }

  try {
    lp.matrix = SparseMatrix(lp.row_names.size(), n, std::move(triplets));
    lp.validate();
  } catch (const LpError& e) {
    throw MpsError(0, e.what());
  }
  return lp;
}

}  // namespace hybridbench
