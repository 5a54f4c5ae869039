#include "fjvote/manifest.hpp"

#include <fstream>

#include "fjvote/errors.hpp"

namespace fjvote {

nlohmann::json RunManifest::to_json() const {
  return {{"artifact_version", version},
          {"subcommand", subcommand},
          {"seed", seed},
          {"config", config},
          {"outputs", outputs}};
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  RunManifest m;
  m.version = j.value("artifact_version", std::string(kArtifactVersion));
  m.subcommand = j.at("subcommand").get<std::string>();
  m.seed = j.value("seed", std::uint64_t{0});
  m.config = j.at("config");
  m.outputs = j.value("outputs", std::vector<std::string>{});
  return m;
}

void RunManifest::save(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write manifest " + file.string());
  out << to_json().dump(2) << '\n';
}

RunManifest RunManifest::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot read manifest " + file.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid JSON in " + file.string() + ": " + e.what());
  }
  return from_json(j);
}

bool is_manifest(const nlohmann::json& j) {
  return j.is_object() && j.contains("subcommand") && j.contains("config");
}

}  // namespace fjvote
