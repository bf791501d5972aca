#include "reclab/simd/lattice.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include "reclab/simd/philox.hpp"

#define RECLAB_AVX2 __attribute__((target("avx2")))

namespace reclab::simd {

namespace {

struct Lanes4 {
  __m256i w[4];
};

RECLAB_AVX2 inline void mulhilo(__m256i a, __m256i m, __m256i& hi, __m256i& lo) {
  const __m256i even = _mm256_mul_epu32(a, m);
  const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), m);
  lo = _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0xAA);
  hi = _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA);
}

RECLAB_AVX2 inline Lanes4 philox8(__m256i c0, __m256i c1, __m256i c2, __m256i c3, std::uint32_t k0,
                                  std::uint32_t k1) {
  const __m256i m0 = _mm256_set1_epi32(static_cast<int>(kPhiloxM0));
  const __m256i m1 = _mm256_set1_epi32(static_cast<int>(kPhiloxM1));
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k0 += kPhiloxW0;
      k1 += kPhiloxW1;
    }
    __m256i hi0, lo0, hi1, lo1;
    mulhilo(c0, m0, hi0, lo0);
    mulhilo(c2, m1, hi1, lo1);
    const __m256i vk0 = _mm256_set1_epi32(static_cast<int>(k0));
    const __m256i vk1 = _mm256_set1_epi32(static_cast<int>(k1));
    c0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c1), vk0);
    c1 = lo1;
    c2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c3), vk1);
    c3 = lo0;
  }
  return {{c0, c1, c2, c3}};
}

}  // namespace

RECLAB_AVX2 void lattice_first_return_avx2(const LatticeKernelSpec& s, std::uint64_t first, std::uint64_t count,
                                           std::uint32_t horizon, std::uint32_t* out) {
  alignas(32) std::int32_t dx_flat[kMaxMoves * kMaxRegions];
  alignas(32) std::int32_t dy_flat[kMaxMoves * kMaxRegions];
  for (int m = 0; m < kMaxMoves; ++m) {
    for (int r = 0; r < kMaxRegions; ++r) {
      dx_flat[m * kMaxRegions + r] = s.dx[m][r];
      dy_flat[m * kMaxRegions + r] = s.dy[m][r];
    }
  }
  __m256i thr[kMaxMoves - 1];
  for (int m = 0; m + 1 < kMaxMoves; ++m) {
    thr[m] = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(s.threshold[m]));
  }
  const int n_thr = s.n_moves - 1;
  const bool homogeneous = s.rule == LatticeRule::Homogeneous;
  __m256i hthr[kMaxMoves - 1];
  for (int m = 0; m + 1 < kMaxMoves; ++m) hthr[m] = _mm256_set1_epi32(s.threshold[m][0]);
  __m256i hdx = _mm256_setzero_si256(), hdy = _mm256_setzero_si256();
  {
    alignas(32) std::int32_t tx[8], ty[8];
    for (int m = 0; m < kMaxMoves; ++m) {
      tx[m] = s.dx[m][0];
      ty[m] = s.dy[m][0];
    }
    hdx = _mm256_load_si256(reinterpret_cast<const __m256i*>(tx));
    hdy = _mm256_load_si256(reinterpret_cast<const __m256i*>(ty));
  }
  const auto k0 = static_cast<std::uint32_t>(s.key);
  const auto k1 = static_cast<std::uint32_t>(s.key >> 32);
  const __m256i one = _mm256_set1_epi32(1);
  const __m256i zero = _mm256_setzero_si256();
  const __m256i sx = _mm256_set1_epi32(s.start_x);
  const __m256i sy = _mm256_set1_epi32(s.start_y);
  const __m256i vk = _mm256_set1_epi32(s.slab_k);
  const __m256i stream = _mm256_set1_epi32(static_cast<int>(s.stream));
  const __m256i vhorizon = _mm256_set1_epi32(static_cast<int>(horizon));

  alignas(32) std::int32_t x[8], y[8], t[8], lo[8], hi[8], act[8];
  std::uint64_t traj[8];
  for (int l = 0; l < 8; ++l) {
    x[l] = y[l] = t[l] = lo[l] = hi[l] = act[l] = 0;
    traj[l] = 0;
  }
  std::uint64_t next = 0;
  for (std::uint64_t i = 0; i < count; ++i) out[i] = 0;
  if (horizon == 0) return;

  __m256i vx = zero, vy = zero, vt = zero, vact = zero, vlo = zero, vhi = zero;
  bool refill = true;
  for (;;) {
    if (refill) {
      _mm256_store_si256(reinterpret_cast<__m256i*>(x), vx);
      _mm256_store_si256(reinterpret_cast<__m256i*>(y), vy);
      _mm256_store_si256(reinterpret_cast<__m256i*>(t), vt);
      _mm256_store_si256(reinterpret_cast<__m256i*>(act), vact);
      bool any = false;
      for (int l = 0; l < 8; ++l) {
        if (!act[l] && next < count) {
          traj[l] = first + next;
          ++next;
          x[l] = s.start_x;
          y[l] = s.start_y;
          t[l] = 0;
          lo[l] = static_cast<std::int32_t>(static_cast<std::uint32_t>(traj[l]));
          hi[l] = static_cast<std::int32_t>(static_cast<std::uint32_t>(traj[l] >> 32));
          act[l] = -1;
        }
        any = any || act[l];
      }
      if (!any) break;
      vx = _mm256_load_si256(reinterpret_cast<const __m256i*>(x));
      vy = _mm256_load_si256(reinterpret_cast<const __m256i*>(y));
      vt = _mm256_load_si256(reinterpret_cast<const __m256i*>(t));
      vact = _mm256_load_si256(reinterpret_cast<const __m256i*>(act));
      vlo = _mm256_load_si256(reinterpret_cast<const __m256i*>(lo));
      vhi = _mm256_load_si256(reinterpret_cast<const __m256i*>(hi));
    }
    const Lanes4 words = philox8(_mm256_srli_epi32(vt, 2), stream, vlo, vhi, k0, k1);

    for (int step = 0; step < 4; ++step) {
      // lanes with t < horizon (t and horizon stay below 2^31)
      vact = _mm256_and_si256(vact, _mm256_cmpgt_epi32(vhorizon, vt));
      if (_mm256_testz_si256(vact, vact)) break;
      const __m256i u = _mm256_srli_epi32(words.w[step], 2);
      __m256i ddx, ddy;
      if (homogeneous) {
        __m256i m = zero;
        for (int j = 0; j < n_thr; ++j) {
          m = _mm256_add_epi32(m, _mm256_andnot_si256(_mm256_cmpgt_epi32(hthr[j], u), one));
        }
        ddx = _mm256_permutevar8x32_epi32(hdx, m);
        ddy = _mm256_permutevar8x32_epi32(hdy, m);
      } else {
        const __m256i cx = _mm256_cmpeq_epi32(vx, zero);
        const __m256i cy = _mm256_cmpeq_epi32(vy, zero);
        __m256i region;
        switch (s.rule) {
          case LatticeRule::Homogeneous:
            region = zero;
            break;
          case LatticeRule::Quadrant:
            region = _mm256_sub_epi32(_mm256_sub_epi32(zero, cx), _mm256_add_epi32(cy, cy));
            break;
          case LatticeRule::Slab: {
            const __m256i ck = _mm256_cmpeq_epi32(vy, vk);
            region = _mm256_sub_epi32(zero, _mm256_add_epi32(_mm256_add_epi32(cy, _mm256_add_epi32(ck, ck)),
                                                             _mm256_add_epi32(cx, _mm256_add_epi32(cx, cx))));
            break;
          }
          case LatticeRule::SpineTree:
          default:
            region = _mm256_and_si256(cy, _mm256_sub_epi32(one, cx));
            break;
        }
        __m256i m = zero;
        for (int j = 0; j < n_thr; ++j) {
          const __m256i tj = _mm256_permutevar8x32_epi32(thr[j], region);
          m = _mm256_add_epi32(m, _mm256_andnot_si256(_mm256_cmpgt_epi32(tj, u), one));
        }
        const __m256i idx = _mm256_add_epi32(_mm256_slli_epi32(m, 3), region);
        ddx = _mm256_i32gather_epi32(dx_flat, idx, 4);
        ddy = _mm256_i32gather_epi32(dy_flat, idx, 4);
      }
      vx = _mm256_add_epi32(vx, _mm256_and_si256(ddx, vact));
      vy = _mm256_add_epi32(vy, _mm256_and_si256(ddy, vact));
      vt = _mm256_sub_epi32(vt, vact);
      const __m256i home = _mm256_and_si256(_mm256_cmpeq_epi32(vx, sx), _mm256_cmpeq_epi32(vy, sy));
      const __m256i returned = _mm256_and_si256(home, vact);
      int mask = _mm256_movemask_ps(_mm256_castsi256_ps(returned));
      if (mask) {
        alignas(32) std::int32_t tt[8];
        _mm256_store_si256(reinterpret_cast<__m256i*>(tt), vt);
        while (mask) {
          const int l = __builtin_ctz(static_cast<unsigned>(mask));
          out[traj[l] - first] = static_cast<std::uint32_t>(tt[l]);
          mask &= mask - 1;
        }
        vact = _mm256_andnot_si256(returned, vact);
      }
    }
    // lanes that used up the horizon stay censored (out was zeroed up front)
    vact = _mm256_and_si256(vact, _mm256_cmpgt_epi32(vhorizon, vt));
    // once the queue is drained, finished lanes are simply left idle
    refill = _mm256_movemask_ps(_mm256_castsi256_ps(vact)) != 0xFF && (next < count || _mm256_testz_si256(vact, vact));
  }
}

}  // namespace reclab::simd

#else

#include "reclab/error.hpp"

namespace reclab::simd {

void lattice_first_return_avx2(const LatticeKernelSpec&, std::uint64_t, std::uint64_t, std::uint32_t,
                               std::uint32_t*) {
  throw Error(ErrorCode::PreconditionFailed, "AVX2 backend is not available on this architecture");
}

}  // namespace reclab::simd

#endif
