#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace fjvote {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Written alongside every CLI output. Embeds the fully resolved config so
/// that re-running a subcommand from the manifest reproduces its outputs
/// byte-exactly.
struct RunManifest {
  std::string subcommand;
  std::string version = kArtifactVersion;
  std::uint64_t seed = 0;
  nlohmann::json config;  // all defaults materialized
  std::vector<std::string> outputs;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);

  void save(const std::filesystem::path& file) const;
  static RunManifest load(const std::filesystem::path& file);
};

/// True when the JSON document is a manifest rather than a bare config.
bool is_manifest(const nlohmann::json& j);

}  // namespace fjvote
