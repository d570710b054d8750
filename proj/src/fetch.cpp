#include "hybridbench/fetch.hpp"

#include <curl/curl.h>
#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace hybridbench {
namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool is_hex64(const std::string& s) {
  return s.size() == 64 &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isxdigit(c); });
}

size_t write_cb(char* data, size_t size, size_t nmemb, void* user) {
  auto* out = static_cast<std::ofstream*>(user);
  out->write(data, static_cast<std::streamsize>(size * nmemb));
  return *out ? size * nmemb : 0;
}

void curl_global() {
  static std::once_flag once;
  std::call_once(once, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });
}

std::string download(const std::string& url, const std::filesystem::path& dest) {
  curl_global();
  std::ofstream out(dest, std::ios::binary | std::ios::trunc);
  if (!out) return "cannot create " + dest.string();
  std::unique_ptr<CURL, void (*)(CURL*)> curl(curl_easy_init(), curl_easy_cleanup);
  if (!curl) return "curl initialization failed";
  char err[CURL_ERROR_SIZE] = {};
  curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, write_cb);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, &out);
  curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_ERRORBUFFER, err);
  const CURLcode rc = curl_easy_perform(curl.get());
  out.close();
  if (rc != CURLE_OK) return err[0] ? err : curl_easy_strerror(rc);
  return {};
}

}  // namespace

std::vector<FetchEntry> parse_fetch_manifest(const std::string& text) {
  std::vector<FetchEntry> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string url, sum, name, extra;
    if (!(fields >> url) || url[0] == '#') continue;
    if (!(fields >> sum) || !is_hex64(sum)) {
      throw std::runtime_error("manifest line " + std::to_string(line_no) +
                               ": expected '<url> <sha256> [name]'");
    }
    fields >> name;
    if (fields >> extra) {
      throw std::runtime_error("manifest line " + std::to_string(line_no) + ": too many fields");
    }
    if (name.empty()) {
      std::string path = url.substr(0, url.find_first_of("?#"));
      name = path.substr(path.find_last_of('/') + 1);
    }
    if (name.empty() || name == "." || name == ".." ||
        name.find_first_of("/\\") != std::string::npos) {
      throw std::runtime_error("manifest line " + std::to_string(line_no) +
                               ": cannot derive a safe file name");
    }
    out.push_back({url, lower(sum), name});
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, void (*)(EVP_MD_CTX*)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char buf[1 << 15];
  while (in) {
    in.read(buf, sizeof buf);
    EVP_DigestUpdate(ctx.get(), buf, static_cast<size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::string hex;
  char two[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(two, sizeof two, "%02x", md[i]);
    hex += two;
  }
  return hex;
}

FetchResult fetch(const std::vector<FetchEntry>& entries, const std::filesystem::path& out_dir) {
  FetchResult res;
  if (entries.empty()) return res;
  std::filesystem::create_directories(out_dir);
  for (const FetchEntry& e : entries) {
    const auto dest = out_dir / e.filename;
    if (std::filesystem::exists(dest) && sha256_file(dest) == e.sha256) {
      ++res.skipped;
      res.messages.push_back(e.filename + ": already present, checksum ok");
      continue;
    }
    const auto part = out_dir / (e.filename + ".part");
    const std::string err = download(e.url, part);
    if (!err.empty()) {
      std::filesystem::remove(part);
      ++res.failed;
      res.messages.push_back(e.filename + ": download failed: " + err);
      continue;
    }
    const std::string got = sha256_file(part);
    if (got != e.sha256) {
      std::filesystem::remove(part);
      ++res.failed;
      res.messages.push_back(e.filename + ": checksum mismatch (got " + got + ")");
      continue;
    }
    std::filesystem::rename(part, dest);
    ++res.downloaded;
    res.messages.push_back(e.filename + ": downloaded, checksum ok");
  }
  return res;
}

}  // namespace hybridbench
