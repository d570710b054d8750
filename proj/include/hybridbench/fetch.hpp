#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace hybridbench {

/// One manifest line: "<url> <sha256-hex> [file name]". Blank lines and lines
/// starting with '#' are ignored. Without a name, the last URL path segment is used.
struct FetchEntry {
  std::string url;
  std::string sha256;
  std::string filename;
};

/// Throws std::runtime_error on malformed lines (with the line number).
std::vector<FetchEntry> parse_fetch_manifest(const std::string& text);

std::string sha256_file(const std::filesystem::path& path);

struct FetchResult {
  std::size_t downloaded = 0;
  std::size_t skipped = 0;  // already present with matching checksum
  std::size_t failed = 0;
  std::vector<std::string> messages;
};

/// Downloads (http, https, file) into `out_dir`, verifying SHA-256. Files that
/// fail verification are removed. Re-running skips verified files.
FetchResult fetch(const std::vector<FetchEntry>& entries, const std::filesystem::path& out_dir);

}  // namespace hybridbench
