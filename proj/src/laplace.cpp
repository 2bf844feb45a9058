#include "nnoma/laplace.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nnoma/errors.hpp"
#include "nnoma/quadrature.hpp"

namespace nnoma {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDerivRelTol = 1e-12;

// I_k(x) = int_0^1 t^{alpha k - 3} (1 + x t^alpha)^{-(k+1)} dt, k >= 1, x >= 0.
// With r = r_min / t:
//   int_{r_min}^inf r^{alpha+1} (r^alpha + mu)^{-(k+1)} dr = r_min^{2 - alpha k} I_k(x),
//   x = mu / r_min^alpha.
// t^{alpha k - 3} is singular or non-smooth at 0 for most alpha; tanh-sinh absorbs that.
// `log_prefactor` is added to the log of the integrand so that x^k can be
// folded in without underflow.
// General form int_0^1 t^e (1 + x t^alpha)^{-power} dt; I_k has e = alpha k - 3, power = k + 1.
double shape_integral(double e, double power, double x, double alpha, double log_prefactor, double abs_tol = 0.0) {
  auto integrand = [&](double t) {
    if (t <= 0) return 0.0;
    const double log_val = log_prefactor + e * std::log(t) - power * std::log1p(x * std::pow(t, alpha));
    return std::exp(log_val);
  };
  return integrate_singular(integrand, 0.0, 1.0, kDerivRelTol, abs_tol).value;
}

}  // namespace

InterferenceField comp_interference(const SystemParams& p) {
  return {p.lambda_c, 1.0 / p.rho, p.R_D, p.alpha};
}

double hyp2f1_b1(double a, double c, double z) {
  if (z > 0) throw std::invalid_argument("hyp2f1_b1: only z <= 0 is supported");
  if (z == 0) return 1.0;
  constexpr int kMaxTerms = 20000000;
  auto series = [&](double aa, double w) {
    // sum_n (aa)_n / (c)_n w^n
    double term = 1, sum = 1;
    for (int n = 0; n < kMaxTerms; ++n) {
      term *= (aa + n) / (c + n) * w;
      const double before = sum;
      sum += term;
      if (sum == before && std::abs(term) < 1e-17 * std::abs(sum)) return sum;
    }
    throw NumericalError("hyp2f1_b1: series did not converge");
  };
  if (z > -0.5) return series(a, z);
  // Pfaff: 2F1(a, 1; c; z) = (1 - z)^{-1} 2F1(c - a, 1; c; z / (z - 1))
  return series(c - a, z / (z - 1.0)) / (1.0 - z);
}

double tau(double mu, const InterferenceField& f) {
  if (mu < 0) throw std::invalid_argument("tau: mu must be nonnegative");
  if (mu == 0) return 0.0;
  double interference = 0;
  if (f.lambda > 0) {
    // int_{r_min}^inf mu r / (r^alpha + mu) dr = r_min^2 x int_0^1 t^{alpha-3} / (1 + x t^alpha) dt
    const double x = mu / std::pow(f.r_min, f.alpha);
    const double shape = shape_integral(f.alpha - 3.0, 1.0, x, f.alpha, 0.0);
    interference = kTwoPi * f.lambda * f.r_min * f.r_min * x * shape;
  }
  return -mu * f.inv_rho - interference;
}

double tau_hypergeometric(double mu, const InterferenceField& f) {
  if (mu < 0) throw std::invalid_argument("tau_hypergeometric: mu must be nonnegative");
  const double a = 1.0 - 2.0 / f.alpha;
  const double z = -mu / std::pow(f.r_min, f.alpha);
  return -mu * f.inv_rho - kTwoPi * f.lambda * mu * std::pow(f.r_min, 2.0 - f.alpha) /
                               (f.alpha - 2.0) * hyp2f1_b1(a, a + 1.0, z);
}

std::vector<double> tau_derivatives(double mu, int max_order, const InterferenceField& f) {
  if (mu < 0) throw std::invalid_argument("tau_derivatives: mu must be nonnegative");
  if (max_order < 1) throw std::invalid_argument("tau_derivatives: max_order must be >= 1");
  std::vector<double> out(max_order, 0.0);
  const double x = mu / std::pow(f.r_min, f.alpha);
  double factorial = 1;
  for (int k = 1; k <= max_order; ++k) {
    factorial *= k;
    double value = k == 1 ? -f.inv_rho : 0.0;
    if (f.lambda > 0) {
      const double shape = shape_integral(f.alpha * k - 3.0, k + 1.0, x, f.alpha, 0.0);
      const double magnitude = kTwoPi * f.lambda * factorial * std::pow(f.r_min, 2.0 - f.alpha * k) * shape;
      value += (k % 2 == 1) ? -magnitude : magnitude;
    }
    out[k - 1] = value;
  }
  return out;
}

std::vector<double> laplace_derivatives(double mu, int max_order, const InterferenceField& f) {
  if (max_order < 0) throw std::invalid_argument("laplace_derivatives: max_order must be >= 0");
  std::vector<double> L(max_order + 1, 0.0);
  L[0] = std::exp(tau(mu, f));
  if (max_order == 0) return L;
  const auto t = tau_derivatives(mu, max_order, f);
  for (int i = 1; i <= max_order; ++i) {
    double s = 0;
    double binom = 1;  // C(i-1, j)
    for (int j = 0; j < i; ++j) {
      s += binom * t[i - j - 1] * L[j];
      binom = binom * (i - 1 - j) / (j + 1);
    }
    L[i] = s;
  }
  return L;
}

std::vector<double> scaled_laplace_terms(double mu, int max_order, const InterferenceField& f) {
  if (mu < 0) throw std::invalid_argument("scaled_laplace_terms: mu must be nonnegative");
  if (max_order < 0) throw std::invalid_argument("scaled_laplace_terms: max_order must be >= 0");
  std::vector<double> a(max_order + 1, 0.0);
  a[0] = std::exp(tau(mu, f));
  if (max_order == 0 || mu == 0) return a;

  // b_k = (-mu)^k tau^{(k)} / k! = 2 pi lambda r_min^2 x^k I_k(x) + [k = 1] mu / rho
  const double x = mu / std::pow(f.r_min, f.alpha);
  std::vector<double> b(max_order + 1, 0.0);
  for (int k = 1; k <= max_order; ++k) {
    double value = k == 1 ? mu * f.inv_rho : 0.0;
    if (f.lambda > 0) {
      const double log_pref = std::log(kTwoPi * f.lambda * f.r_min * f.r_min) + k * std::log(x);
      // high orders only need to be resolved against b_1; the shape integral is below 1/(alpha k - 2)
      const double floor = k == 1 ? 0.0 : 1e-17 * b[1];
      if (k > 1 && log_pref - std::log(f.alpha * k - 2.0) < std::log(floor)) {
        b[k] = value;
        continue;
      }
      value += shape_integral(f.alpha * k - 3.0, k + 1.0, x, f.alpha, log_pref, floor);
    }
    b[k] = value;
  }
  for (int j = 1; j <= max_order; ++j) {
    double s = 0;
    for (int k = 1; k <= j; ++k) s += k * b[k] * a[j - k];
    a[j] = s / j;
  }
  return a;
}

}  // namespace nnoma
