#pragma once

#include <cstdint>
#include <string_view>

namespace reclab::simd {

/// How a lattice position maps to a region id.
///   Homogeneous: always 0.
///   Quadrant:    (x==0) + 2(y==0).
///   Slab:        (y==0) + 2(y==k) + 3(x==0).
///   SpineTree:   y>0 -> 0, else x>0 -> 1, else 2. (x = spine depth, y = depth below the spine)
enum class LatticeRule : std::int32_t { Homogeneous = 0, Quadrant = 1, Slab = 2, SpineTree = 3 };

inline constexpr int kMaxMoves = 8;
inline constexpr int kMaxRegions = 8;
inline constexpr std::int32_t kThresholdOne = 1 << 30;

/// Region-dependent walk on Z^2 driven by one Philox word per step.
/// A step draws u = word >> 2 and takes move #{m < n_moves-1 : u >= threshold[m][region]}.
struct LatticeKernelSpec {
  LatticeRule rule = LatticeRule::Homogeneous;
  std::int32_t slab_k = 0;
  std::int32_t n_moves = 1;
  std::int32_t threshold[kMaxMoves - 1][kMaxRegions] = {};
  std::int32_t dx[kMaxMoves][kMaxRegions] = {};
  std::int32_t dy[kMaxMoves][kMaxRegions] = {};
  std::int32_t start_x = 0;
  std::int32_t start_y = 0;
  std::uint64_t key = 0;
  std::uint32_t stream = 0;
};

inline std::int32_t lattice_region(const LatticeKernelSpec& s, std::int32_t x, std::int32_t y) {
  switch (s.rule) {
    case LatticeRule::Homogeneous: return 0;
    case LatticeRule::Quadrant: return (x == 0) + 2 * (y == 0);
    case LatticeRule::Slab: return (y == 0) + 2 * (y == s.slab_k) + 3 * (x == 0);
    case LatticeRule::SpineTree: return y > 0 ? 0 : (x > 0 ? 1 : 2);
  }
  return 0;
}

enum class Backend { Auto, Scalar, Avx2 };

std::string_view to_string(Backend b);
Backend backend_from_string(std::string_view name);
bool avx2_supported();
/// Auto honours RECLAB_SIMD=scalar|avx2, then CPU detection.
Backend resolve_backend(Backend requested);

/// out[i] = first return time to the start of trajectory first+i, or 0 if
/// the walk has not returned within `horizon` steps.
void lattice_first_return_scalar(const LatticeKernelSpec& spec, std::uint64_t first, std::uint64_t count,
                                 std::uint32_t horizon, std::uint32_t* out);
void lattice_first_return_avx2(const LatticeKernelSpec& spec, std::uint64_t first, std::uint64_t count,
                               std::uint32_t horizon, std::uint32_t* out);
void lattice_first_return(const LatticeKernelSpec& spec, std::uint64_t first, std::uint64_t count,
                          std::uint32_t horizon, std::uint32_t* out, Backend backend = Backend::Auto);

}  // namespace reclab::simd
