#include <cstdlib>
#include <string>

#include "reclab/error.hpp"
#include "reclab/simd/lattice.hpp"

namespace reclab::simd {

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Auto: return "auto";
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "?";
}

Backend backend_from_string(std::string_view name) {
  for (Backend b : {Backend::Auto, Backend::Scalar, Backend::Avx2}) {
    if (to_string(b) == name) return b;
  }
  throw Error(ErrorCode::UnknownName, "unknown SIMD backend '" + std::string(name) + "'");
}

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool has = __builtin_cpu_supports("avx2");
  return has;
#else
  return false;
#endif
}

Backend resolve_backend(Backend requested) {
  if (requested == Backend::Avx2) {
    if (!avx2_supported()) throw Error(ErrorCode::PreconditionFailed, "AVX2 requested but not supported by this CPU");
    return requested;
  }
  if (requested == Backend::Scalar) return requested;
  if (const char* env = std::getenv("RECLAB_SIMD")) {
    Backend b = backend_from_string(env);
    if (b != Backend::Auto) return resolve_backend(b);
  }
  return avx2_supported() ? Backend::Avx2 : Backend::Scalar;
}

void lattice_first_return(const LatticeKernelSpec& spec, std::uint64_t first, std::uint64_t count,
                          std::uint32_t horizon, std::uint32_t* out, Backend backend) {
  if (spec.n_moves < 1 || spec.n_moves > kMaxMoves) {
    throw Error(ErrorCode::InvalidArgument, "lattice kernel supports 1..8 moves");
  }
  if (horizon > (1u << 31) - 1) throw Error(ErrorCode::InvalidArgument, "horizon must be below 2^31");
  if (resolve_backend(backend) == Backend::Avx2) {
    lattice_first_return_avx2(spec, first, count, horizon, out);
  } else {
    lattice_first_return_scalar(spec, first, count, horizon, out);
  }
}

}  // namespace reclab::simd
