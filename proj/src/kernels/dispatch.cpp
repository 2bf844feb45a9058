#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "nnoma/kernels/shot_noise.hpp"

namespace nnoma::kernels {

namespace {

Backend widest_supported() {
  if (backend_supported(Backend::avx2)) return Backend::avx2;
  if (backend_supported(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

Backend initial_backend() {
  if (const char* env = std::getenv("NNOMA_SIMD")) {
    const std::string v(env);
    for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon})
      if (v == backend_name(b) && backend_supported(b)) return b;
  }
  return widest_supported();
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2:
#if defined(NNOMA_BUILD_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::neon:
#if defined(NNOMA_BUILD_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_supported(b)) throw std::invalid_argument("SIMD backend not supported: " + std::string(backend_name(b)));
  current().store(b, std::memory_order_relaxed);
}

double power_law_sum(std::span<const double> r2, std::span<const double> gain, double alpha) {
  switch (active_backend()) {
#if defined(NNOMA_BUILD_AVX2)
    case Backend::avx2: return avx2::power_law_sum(r2, gain, alpha);
#endif
#if defined(NNOMA_BUILD_NEON)
    case Backend::neon: return neon::power_law_sum(r2, gain, alpha);
#endif
    default: return scalar::power_law_sum(r2, gain, alpha);
  }
}

double shot_noise(std::span<const double> x, std::span<const double> y, std::span<const double> gain,
                  double at_x, double at_y, double alpha) {
  switch (active_backend()) {
#if defined(NNOMA_BUILD_AVX2)
    case Backend::avx2: return avx2::shot_noise(x, y, gain, at_x, at_y, alpha);
#endif
#if defined(NNOMA_BUILD_NEON)
    case Backend::neon: return neon::shot_noise(x, y, gain, at_x, at_y, alpha);
#endif
    default: return scalar::shot_noise(x, y, gain, at_x, at_y, alpha);
  }
}

}  // namespace nnoma::kernels
