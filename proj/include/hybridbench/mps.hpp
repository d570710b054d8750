#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hybridbench/lp_core.hpp"

namespace hybridbench {

class MpsError : public std::runtime_error {
 public:
  MpsError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  /// 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct MpsRow {
  std::string name;
  char type = 'E';  // N, E, L, G
};

struct MpsEntry {
  std::size_t col = 0;
  std::size_t row = 0;  // index into MpsDocument::rows
  double value = 0.0;
};

struct MpsValue {
  std::size_t row = 0;
  double value = 0.0;
};

struct MpsBound {
  std::string type;  // UP LO FX FR MI PL BV LI UI
  std::size_t col = 0;
  double value = 0.0;
};

struct MpsDocument {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::string name;
  bool maximize = false;
  std::vector<MpsRow> rows;
  std::vector<std::string> columns;
  std::vector<MpsEntry> entries;
  std::vector<MpsValue> rhs;
  std::vector<MpsValue> ranges;
  std::vector<MpsBound> bounds;
  std::vector<std::size_t> integer_columns;  // recorded, relaxed to continuous
  std::size_t objective_row = npos;
  std::vector<std::string> warnings;
};

/// Parses fixed- or free-format MPS. Throws MpsError and nothing else.
MpsDocument parse_mps(std::string_view text);
/// Reads a file (gzip-decompressed when the name ends in .gz) and parses it.
MpsDocument read_mps_file(const std::filesystem::path& path);

/// Converts to row form. Ranged rows become two rows: the original keeps its
/// relation and a companion row "<name>_rng" carries the other side. Throws MpsError.
LinearProgram to_lp(const MpsDocument& doc);

/// Free-format serializer; names containing whitespace are rewritten with '_'.
std::string write_mps(const LinearProgram& lp);

}  // namespace hybridbench
