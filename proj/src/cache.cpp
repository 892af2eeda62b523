#include "slecoef/cache.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "slecoef/errors.hpp"

namespace slecoef {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string RunManifest::canonical_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["params"] = params;  // std::map keeps keys sorted
  j["version"] = version;
  j["input_hash"] = input_hash;
  return j.dump();
}

std::string RunManifest::key() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_json())));
  return buf;
}

ResultCache::ResultCache(std::string dir) {
  if (!dir.empty()) {
    dir_ = std::move(dir);
    return;
  }
  if (const char* env = std::getenv("SLECOEF_CACHE_DIR"); env && *env) {
    dir_ = env;
    return;
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    dir_ = std::string(home) + "/.cache/slecoef";
    return;
  }
  dir_ = ".slecoef-cache";
}

std::optional<std::string> ResultCache::lookup(const RunManifest& m) const {
  const fs::path artifact = fs::path(dir_) / (m.key() + ".out");
  std::ifstream in(artifact, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ResultCache::store(const RunManifest& m, const std::string& artifact) const {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw IoError("cache: cannot create directory " + dir_);
  const std::string key = m.key();
  {
    std::ofstream out(fs::path(dir_) / (key + ".out"), std::ios::binary);
    if (!out) throw IoError("cache: cannot write artifact under " + dir_);
    out << artifact;
  }
  nlohmann::json meta = nlohmann::json::parse(m.canonical_json());
  meta["created_at"] = static_cast<long>(
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count());
  std::ofstream meta_out(fs::path(dir_) / (key + ".manifest.json"));
  meta_out << meta.dump(2) << "\n";
}

}  // namespace slecoef
