#include "manifest.hpp"

#include <gmp.h>
#include <mpfr.h>
#include <openssl/evp.h>

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "reclab/simd/lattice.hpp"
#include "reclab/walk_io.hpp"

#ifndef RECLAB_VERSION
#define RECLAB_VERSION "dev"
#endif

namespace reclab::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

RunManifest::RunManifest(std::string command, std::vector<std::string> argv)
    : command_(std::move(command)), argv_(std::move(argv)), start_(std::chrono::steady_clock::now()) {}

void RunManifest::add_input(const std::string& name, const std::string& bytes) {
  inputs_.push_back({{"name", name}, {"sha256", sha256_hex(bytes)}, {"bytes", bytes.size()}});
}

void RunManifest::set_parent(const std::string& path, const std::string& bytes) {
  parent_ = {{"path", path}, {"sha256", sha256_hex(bytes)}};
}

nlohmann::json RunManifest::to_json() const {
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  nlohmann::json j = {
      {"command", command_},
      {"argv", argv_},
      {"inputs", inputs_},
      {"versions",
       {{"reclab", RECLAB_VERSION},
        {"schema", io::kSchemaVersion},
        {"gmp", gmp_version},
        {"mpfr", mpfr_get_version()},
        {"simd_backend", std::string(simd::to_string(simd::resolve_backend(simd::Backend::Auto)))}}},
      {"wall_time_seconds", wall},
      {"outputs", outputs_},
  };
  j["seed"] = has_seed_ ? nlohmann::json(seed_) : nlohmann::json(nullptr);
  if (!parent_.is_null()) j["parent"] = parent_;
  for (auto it = extra_.begin(); it != extra_.end(); ++it) j[it.key()] = it.value();
  return j;
}

}  // namespace reclab::cli
