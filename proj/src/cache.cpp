#include "chevlab/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace chevlab {

namespace fs = std::filesystem;

fs::path cache_directory(const std::string& override_dir) {
  fs::path dir;
  if (!override_dir.empty()) {
    dir = override_dir;
  } else if (const char* env = std::getenv("CHEVLAB_CACHE"); env && *env) {
    dir = env;
  } else if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    dir = fs::path(xdg) / "chevlab";
  } else if (const char* home = std::getenv("HOME"); home && *home) {
    dir = fs::path(home) / ".cache" / "chevlab";
  } else {
    dir = fs::path(".chevlab-cache");
  }
  std::error_code ec;
  fs::create_directories(dir, ec);  // best effort; writes will surface errors
  return dir;
}

std::optional<std::vector<std::string>> cache_read(
    const fs::path& file, const std::string& expected_meta) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::string header, meta;
  if (!std::getline(in, header) || header != kCacheHeader) return std::nullopt;
  if (!std::getline(in, meta) || meta != expected_meta) return std::nullopt;
  std::vector<std::string> records;
  std::string line;
  while (std::getline(in, line)) records.push_back(std::move(line));
  return records;
}

void cache_write(const fs::path& file, const std::string& meta,
                 const std::vector<std::string>& records) {
  std::error_code ec;
  fs::create_directories(file.parent_path(), ec);

  std::mt19937_64 rng(std::random_device{}());
  fs::path tmp = file;
  tmp += ".tmp" + std::to_string(rng());
  {
    std::ofstream out(tmp);
    if (!out) return;  // cache is best effort
    out << kCacheHeader << '\n' << meta << '\n';
    for (const auto& r : records) out << r << '\n';
    if (!out) {
      out.close();
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, file, ec);
  if (ec) fs::remove(tmp, ec);
}

}  // namespace chevlab
