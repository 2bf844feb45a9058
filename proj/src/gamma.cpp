#include "nnoma/gamma.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nnoma {

double lower_inc_gamma(int s, double x) {
  if (s < 1) throw std::invalid_argument("lower_inc_gamma: s must be a positive integer");
  if (x < 0) throw std::invalid_argument("lower_inc_gamma: x must be nonnegative");
  double term = 1;
  double partial = 1;
  for (int j = 1; j < s; ++j) {
    term *= x / j;
    partial += term;
  }
  return std::tgamma(static_cast<double>(s)) * (1.0 - std::exp(-x) * partial);
}

double lower_inc_gamma_series(int s, double x, int max_terms) {
  if (s < 1) throw std::invalid_argument("lower_inc_gamma_series: s must be a positive integer");
  if (x < 0) throw std::invalid_argument("lower_inc_gamma_series: x must be nonnegative");
  if (x == 0) return 0;
  // term_k = x^{s+k} e^{-x} / (s+k)!, built in log space for the first term.
  double term = std::exp((s * std::log(x)) - x - std::lgamma(s + 1.0));
  double sum = 0;
  for (int k = 0; k < max_terms; ++k) {
    const double before = sum;
    sum += term;
    term *= x / (s + k + 1.0);
    if (k > x && sum == before) break;
  }
  return std::tgamma(static_cast<double>(s)) * sum;
}

double beta_fn(double a, double b) {
  if (!(a > 0) || !(b > 0)) throw std::invalid_argument("beta_fn: arguments must be positive");
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

}  // namespace nnoma
