#include "qes/cache.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qes/errors.hpp"

namespace qes {

namespace fs = std::filesystem;

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {}

Cache Cache::from_environment() {
  const char* env = std::getenv("QES_CACHE_DIR");
  return Cache(env && *env ? fs::path(env) : fs::path());
}

fs::path Cache::file_for(const std::string& kind, int n) const { return dir_ / (kind + "-" + std::to_string(n) + ".json"); }

std::optional<nlohmann::json> Cache::load(const std::string& kind, int n) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(file_for(kind, n));
  if (!in) return std::nullopt;
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception&) {
    // A corrupt entry is treated as a miss and overwritten later.
    return std::nullopt;
  }
}

void Cache::store(const std::string& kind, int n, const nlohmann::json& value) const {
  if (!enabled()) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  const fs::path target = file_for(kind, n);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cache: cannot write " + tmp.string());
    out << value.dump() << '\n';
    if (!out) throw Error("cache: write failed for " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cache: cannot rename into " + target.string());
  }
}

std::vector<Cache::Entry> Cache::list() const {
  std::vector<Entry> out;
  if (!enabled() || !fs::is_directory(dir_)) return out;
  for (const auto& e : fs::directory_iterator(dir_)) {
    if (!e.is_regular_file() || e.path().extension() != ".json") continue;
    out.push_back({e.path().filename().string(), e.file_size()});
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.name < b.name; });
  return out;
}

std::size_t Cache::clear() const {
  std::size_t removed = 0;
  for (const auto& e : list()) {
    std::error_code ec;
    if (fs::remove(dir_ / e.name, ec)) ++removed;
  }
  return removed;
}

}  // namespace qes
