#include <cmath>

#include "nnoma/kernels/shot_noise.hpp"

namespace nnoma::kernels {

int integer_half_exponent(double alpha) {
  const double h = alpha / 2.0;
  if (h >= 1.0 && h <= 32.0 && h == std::floor(h)) return static_cast<int>(h);
  return 0;
}

namespace scalar {

namespace {

inline double ipow(double base, int e) {
  double result = 1.0;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

}  // namespace

double power_law_sum(std::span<const double> r2, std::span<const double> gain, double alpha) {
  const int h = integer_half_exponent(alpha);
  double sum = 0;
  if (h > 0) {
    for (std::size_t i = 0; i < r2.size(); ++i) sum += gain[i] / ipow(r2[i], h);
  } else {
    const double e = -alpha / 2.0;
    for (std::size_t i = 0; i < r2.size(); ++i) sum += gain[i] * std::pow(r2[i], e);
  }
  return sum;
}

double shot_noise(std::span<const double> x, std::span<const double> y, std::span<const double> gain,
                  double at_x, double at_y, double alpha) {
  const int h = integer_half_exponent(alpha);
  const double e = -alpha / 2.0;
  double sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - at_x;
    const double dy = y[i] - at_y;
    const double r2 = dx * dx + dy * dy;
    sum += h > 0 ? gain[i] / ipow(r2, h) : gain[i] * std::pow(r2, e);
  }
  return sum;
}

}  // namespace scalar
}  // namespace nnoma::kernels
