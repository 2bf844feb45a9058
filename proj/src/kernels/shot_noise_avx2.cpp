#include <immintrin.h>

#include <cmath>

#include "nnoma/kernels/shot_noise.hpp"

namespace nnoma::kernels::avx2 {

namespace {

inline __m256d ipow(__m256d base, int e) {
  __m256d result = _mm256_set1_pd(1.0);
  while (e > 0) {
    if (e & 1) result = _mm256_mul_pd(result, base);
    base = _mm256_mul_pd(base, base);
    e >>= 1;
  }
  return result;
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// gain * r2^(-alpha/2) for four lanes.
inline __m256d attenuate(__m256d r2, __m256d gain, int h, double e) {
  if (h > 0) return _mm256_div_pd(gain, ipow(r2, h));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, r2);
  for (double& v : lanes) v = std::pow(v, e);
  return _mm256_mul_pd(gain, _mm256_load_pd(lanes));
}

}  // namespace

double power_law_sum(std::span<const double> r2, std::span<const double> gain, double alpha) {
  const int h = integer_half_exponent(alpha);
  const double e = -alpha / 2.0;
  const std::size_t n = r2.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_loadu_pd(r2.data() + i);
    const __m256d g = _mm256_loadu_pd(gain.data() + i);
    acc = _mm256_add_pd(acc, attenuate(d, g, h, e));
  }
  double sum = hsum(acc);
  if (i < n) sum += scalar::power_law_sum(r2.subspan(i), gain.subspan(i), alpha);
  return sum;
}

double shot_noise(std::span<const double> x, std::span<const double> y, std::span<const double> gain,
                  double at_x, double at_y, double alpha) {
  const int h = integer_half_exponent(alpha);
  const double e = -alpha / 2.0;
  const std::size_t n = x.size();
  const __m256d px = _mm256_set1_pd(at_x);
  const __m256d py = _mm256_set1_pd(at_y);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i), px);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y.data() + i), py);
    const __m256d r2 = _mm256_fmadd_pd(dx, dx, _mm256_mul_pd(dy, dy));
    acc = _mm256_add_pd(acc, attenuate(r2, _mm256_loadu_pd(gain.data() + i), h, e));
  }
  double sum = hsum(acc);
  if (i < n) sum += scalar::shot_noise(x.subspan(i), y.subspan(i), gain.subspan(i), at_x, at_y, alpha);
  return sum;
}

}  // namespace nnoma::kernels::avx2
