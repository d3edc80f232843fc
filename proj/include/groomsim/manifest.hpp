#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace groomsim {

inline constexpr const char* kToolVersion = "0.1.0";

// Record of one CLI run: the resolved configuration plus every file touched.
// Re-running the subcommand with the recorded config reproduces the listed
// outputs byte for byte.
struct RunManifest {
  std::string tool = "groomsim";
  std::string version = kToolVersion;
  std::string subcommand;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> config;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  double duration_seconds = 0.0;
};

inline void write_manifest(const std::string& path, const RunManifest& m) {
  nlohmann::json j;
  j["tool"] = m.tool;
  j["version"] = m.version;
  j["subcommand"] = m.subcommand;
  j["seed"] = m.seed;
  j["config"] = m.config;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["duration_seconds"] = m.duration_seconds;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  out << j.dump(2) << '\n';
}

inline RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read manifest: " + path);
  nlohmann::json j;
  in >> j;
  RunManifest m;
  m.tool = j.at("tool").get<std::string>();
  m.version = j.at("version").get<std::string>();
  m.subcommand = j.at("subcommand").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.config = j.at("config").get<std::map<std::string, std::string>>();
  m.inputs = j.at("inputs").get<std::vector<std::string>>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  m.duration_seconds = j.at("duration_seconds").get<double>();
  return m;
}

}  // namespace groomsim
