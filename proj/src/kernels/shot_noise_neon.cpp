#include <arm_neon.h>

#include <cmath>

#include "nnoma/kernels/shot_noise.hpp"

namespace nnoma::kernels::neon {

namespace {

inline float64x2_t ipow(float64x2_t base, int e) {
  float64x2_t result = vdupq_n_f64(1.0);
  while (e > 0) {
    if (e & 1) result = vmulq_f64(result, base);
    base = vmulq_f64(base, base);
    e >>= 1;
  }
  return result;
}

inline float64x2_t attenuate(float64x2_t r2, float64x2_t gain, int h, double e) {
  if (h > 0) return vdivq_f64(gain, ipow(r2, h));
  double lanes[2];
  vst1q_f64(lanes, r2);
  for (double& v : lanes) v = std::pow(v, e);
  return vmulq_f64(gain, vld1q_f64(lanes));
}

}  // namespace

double power_law_sum(std::span<const double> r2, std::span<const double> gain, double alpha) {
  const int h = integer_half_exponent(alpha);
  const double e = -alpha / 2.0;
  const std::size_t n = r2.size();
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, attenuate(vld1q_f64(r2.data() + i), vld1q_f64(gain.data() + i), h, e));
  double sum = vaddvq_f64(acc);
  if (i < n) sum += scalar::power_law_sum(r2.subspan(i), gain.subspan(i), alpha);
  return sum;
}

double shot_noise(std::span<const double> x, std::span<const double> y, std::span<const double> gain,
                  double at_x, double at_y, double alpha) {
  const int h = integer_half_exponent(alpha);
  const double e = -alpha / 2.0;
  const std::size_t n = x.size();
  const float64x2_t px = vdupq_n_f64(at_x);
  const float64x2_t py = vdupq_n_f64(at_y);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(x.data() + i), px);
    const float64x2_t dy = vsubq_f64(vld1q_f64(y.data() + i), py);
    const float64x2_t r2 = vfmaq_f64(vmulq_f64(dy, dy), dx, dx);
    acc = vaddq_f64(acc, attenuate(r2, vld1q_f64(gain.data() + i), h, e));
  }
  double sum = vaddvq_f64(acc);
  if (i < n) sum += scalar::shot_noise(x.subspan(i), y.subspan(i), gain.subspan(i), at_x, at_y, alpha);
  return sum;
}

}  // namespace nnoma::kernels::neon
