#ifndef CHEVLAB_CACHE_HPP
#define CHEVLAB_CACHE_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace chevlab {

// Shared on-disk cache, format CHEVCACHE v1:
//   line 1: "CHEVCACHE v1"
//   line 2: a meta string identifying the payload
//   rest:   one record per line
// Files are written atomically (temp file + rename). A stale or foreign
// file is treated as a miss.

inline constexpr const char* kCacheHeader = "CHEVCACHE v1";

// Cache directory: explicit override, else $CHEVLAB_CACHE, else
// $XDG_CACHE_HOME/chevlab, else $HOME/.cache/chevlab, else ./.chevlab-cache.
std::filesystem::path cache_directory(const std::string& override_dir = "");

std::optional<std::vector<std::string>> cache_read(
    const std::filesystem::path& file, const std::string& expected_meta);

void cache_write(const std::filesystem::path& file, const std::string& meta,
                 const std::vector<std::string>& records);

}  // namespace chevlab

#endif
