#pragma once

// On-disk cache for expensive exact artifacts. One JSON file per artifact,
// named {kind}-{n}.json. Writes go to a temporary file that is then renamed,
// so readers never see a partial file and duplicate writers are harmless.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qes {

class Cache {
 public:
  /// An empty directory disables the cache.
  explicit Cache(std::filesystem::path dir = {});
  /// Directory from QES_CACHE_DIR, or a disabled cache if unset.
  static Cache from_environment();

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file_for(const std::string& kind, int n) const;

  std::optional<nlohmann::json> load(const std::string& kind, int n) const;
  void store(const std::string& kind, int n, const nlohmann::json& value) const;

  struct Entry {
    std::string name;
    std::uintmax_t bytes = 0;
  };
  std::vector<Entry> list() const;  // sorted by name
  std::size_t clear() const;        // number of files removed

 private:
  std::filesystem::path dir_;
};

}  // namespace qes
