#pragma once

#include <array>
#include <cstdint>

namespace reclab::simd {

// Philox4x32-10 (Salmon et al.). Constants match the Random123 reference.
inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

inline PhiloxCounter philox_round(const PhiloxCounter& c, const PhiloxKey& k) {
  std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
  std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
  auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
  auto lo0 = static_cast<std::uint32_t>(p0);
  auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
  auto lo1 = static_cast<std::uint32_t>(p1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  ctr = philox_round(ctr, key);
  for (int i = 1; i < 10; ++i) {
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
    ctr = philox_round(ctr, key);
  }
  return ctr;
}

inline PhiloxKey seed_key(std::uint64_t seed) {
  return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

/// Block `block` of the stream identified by (seed, stream tag, trajectory).
inline PhiloxCounter stream_block(std::uint64_t seed, std::uint32_t stream, std::uint64_t trajectory,
                                  std::uint32_t block) {
  return philox4x32_10({block, stream, static_cast<std::uint32_t>(trajectory),
                        static_cast<std::uint32_t>(trajectory >> 32)},
                       seed_key(seed));
}

/// Sequential reader over one trajectory's stream, four words per block.
class StreamReader {
 public:
  StreamReader(std::uint64_t seed, std::uint32_t stream, std::uint64_t trajectory)
      : seed_(seed), stream_(stream), trajectory_(trajectory) {}

  std::uint32_t next() {
    if (used_ == 4) {
      buf_ = stream_block(seed_, stream_, trajectory_, block_++);
      used_ = 0;
    }
    return buf_[used_++];
  }

  /// Uniform 30-bit integer in [0, 2^30).
  std::uint32_t next30() { return next() >> 2; }

  /// Uniform double in [0,1) with 53 random bits.
  double next_double() {
    std::uint64_t hi = next() >> 5;
    std::uint64_t lo = next() >> 6;
    return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
  }

  /// Four words of one block; keeps blocks aligned to steps.
  PhiloxCounter next_block() {
    used_ = 4;
    return stream_block(seed_, stream_, trajectory_, block_++);
  }

 private:
  std::uint64_t seed_;
  std::uint32_t stream_;
  std::uint64_t trajectory_;
  std::uint32_t block_ = 0;
  int used_ = 4;
  PhiloxCounter buf_{};
};

}  // namespace reclab::simd
