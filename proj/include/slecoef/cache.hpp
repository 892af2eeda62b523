#pragma once

// On-disk result cache keyed by a canonical run manifest. The hashed part of
// the manifest is fully deterministic (command, parameters, tool version,
// input content hashes); the timestamp is recorded next to the artifact but
// never hashed, so identical runs hit the same key.

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace slecoef {

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> params;  // flag -> rendered value
  std::string version;
  std::string input_hash;  // content hash of referenced input files

  std::string canonical_json() const;
  std::string key() const;  // hex hash of canonical_json()
};

std::uint64_t fnv1a64(const std::string& data);

class ResultCache {
 public:
  // Resolution order: explicit dir, $SLECOEF_CACHE_DIR, $HOME/.cache/slecoef.
  explicit ResultCache(std::string dir = "");

  const std::string& dir() const { return dir_; }

  std::optional<std::string> lookup(const RunManifest& m) const;
  void store(const RunManifest& m, const std::string& artifact) const;

 private:
  std::string dir_;
};

}  // namespace slecoef
