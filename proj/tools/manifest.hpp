#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace reclab::cli {

std::string sha256_hex(const std::string& bytes);

/// Provenance record written next to every result.
class RunManifest {
 public:
  RunManifest(std::string command, std::vector<std::string> argv);

  void add_input(const std::string& name, const std::string& bytes);
  void set_seed(std::uint64_t seed) { seed_ = seed; has_seed_ = true; }
  void add_output(const std::filesystem::path& p) { outputs_.push_back(p.string()); }
  /// Records the hash of an earlier manifest so runs can be chained.
  void set_parent(const std::string& path, const std::string& bytes);
  void set_extra(const std::string& key, nlohmann::json value) { extra_[key] = std::move(value); }

  nlohmann::json to_json() const;

 private:
  std::string command_;
  std::vector<std::string> argv_;
  nlohmann::json inputs_ = nlohmann::json::array();
  std::vector<std::string> outputs_;
  nlohmann::json parent_;
  nlohmann::json extra_ = nlohmann::json::object();
  std::uint64_t seed_ = 0;
  bool has_seed_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace reclab::cli
