#pragma once

#include <span>
#include <string_view>

// Shot-noise sums over a set of transmitters: the data-parallel inner loop of
// the Monte-Carlo simulator. Each kernel has a scalar reference and SIMD
// variants picked at runtime; the variants differ from the reference only in
// summation order.

namespace nnoma::kernels {

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend b);

/// True if the variant was compiled in and the CPU supports it.
bool backend_supported(Backend b);

/// Backend used by the dispatching entry points. Defaults to the widest
/// supported variant; the NNOMA_SIMD environment variable (scalar|avx2|neon)
/// overrides the default at first use.
Backend active_backend();

/// Throws std::invalid_argument if `b` is not supported.
void set_backend(Backend b);

/// sum_i gain_i * (r2_i)^(-alpha/2), with r2 the squared distances.
double power_law_sum(std::span<const double> r2, std::span<const double> gain, double alpha);

/// sum_i gain_i * ((x_i - at_x)^2 + (y_i - at_y)^2)^(-alpha/2).
double shot_noise(std::span<const double> x, std::span<const double> y, std::span<const double> gain,
                  double at_x, double at_y, double alpha);

namespace scalar {
double power_law_sum(std::span<const double> r2, std::span<const double> gain, double alpha);
double shot_noise(std::span<const double> x, std::span<const double> y, std::span<const double> gain,
                  double at_x, double at_y, double alpha);
}  // namespace scalar

namespace avx2 {
double power_law_sum(std::span<const double> r2, std::span<const double> gain, double alpha);
double shot_noise(std::span<const double> x, std::span<const double> y, std::span<const double> gain,
                  double at_x, double at_y, double alpha);
}  // namespace avx2

namespace neon {
double power_law_sum(std::span<const double> r2, std::span<const double> gain, double alpha);
double shot_noise(std::span<const double> x, std::span<const double> y, std::span<const double> gain,
                  double at_x, double at_y, double alpha);
}  // namespace neon

/// Integer exponent alpha/2 when alpha/2 is a whole number in [1, 32], else 0.
int integer_half_exponent(double alpha);

}  // namespace nnoma::kernels
