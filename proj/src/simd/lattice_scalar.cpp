#include "reclab/simd/lattice.hpp"
#include "reclab/simd/philox.hpp"

namespace reclab::simd {

void lattice_first_return_scalar(const LatticeKernelSpec& s, std::uint64_t first, std::uint64_t count,
                                 std::uint32_t horizon, std::uint32_t* out) {
  const PhiloxKey key = seed_key(s.key);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t traj = first + i;
    std::int32_t x = s.start_x;
    std::int32_t y = s.start_y;
    std::uint32_t result = 0;
    PhiloxCounter words{};
    for (std::uint32_t t = 0; t < horizon; ++t) {
      if ((t & 3u) == 0) {
        words = philox4x32_10({t >> 2, s.stream, static_cast<std::uint32_t>(traj),
                               static_cast<std::uint32_t>(traj >> 32)},
                              key);
      }
      const std::int32_t u = static_cast<std::int32_t>(words[t & 3u] >> 2);
      const std::int32_t r = lattice_region(s, x, y);
      int m = 0;
      for (int j = 0; j + 1 < s.n_moves; ++j) m += u >= s.threshold[j][r];
      x += s.dx[m][r];
      y += s.dy[m][r];
      if (x == s.start_x && y == s.start_y) {
        result = t + 1;
        break;
      }
    }
    out[i] = result;
  }
}

}  // namespace reclab::simd
