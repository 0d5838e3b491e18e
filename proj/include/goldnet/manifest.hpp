#pragma once

#include <openssl/evp.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "json.hpp"

#include "goldnet/errors.hpp"

namespace goldnet {

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Reproducibility record of one CLI run. Everything except the wall-clock
// duration is a function of the invocation.
struct RunManifest {
  struct Artifact {
    std::string path;  // relative to the output directory
    std::uint64_t bytes = 0;
    std::string sha256;
  };

  std::vector<std::string> command_line;
  nlohmann::ordered_json config;
  std::uint64_t master_seed = 0;
  std::string seed_rule;
  std::vector<Artifact> artifacts;
  double wall_clock_seconds = 0.0;

  void add_artifact(const std::filesystem::path& out_dir, const std::filesystem::path& file) {
    const auto bytes = read_file(out_dir / file);
    artifacts.push_back({file.generic_string(), bytes.size(), sha256_hex(bytes)});
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command_line"] = command_line;
    j["config"] = config;
    j["master_seed"] = master_seed;
    j["seed_rule"] = seed_rule;
    auto arts = nlohmann::ordered_json::array();
    for (const auto& a : artifacts) arts.push_back({{"path", a.path}, {"bytes", a.bytes}, {"sha256", a.sha256}});
    j["artifacts"] = std::move(arts);
    j["wall_clock_seconds"] = wall_clock_seconds;
    return j;
  }
};

}  // namespace goldnet
