#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "nnoma/errors.hpp"

namespace nnoma {

struct QuadResult {
  double value = 0;
  double error = 0;  // estimated absolute error
};

inline constexpr double kQuadRelTol = 1e-9;
inline constexpr double kQuadAbsTol = 1e-12;

/// Adaptive 21-point Gauss-Kronrod on a finite interval.
/// Throws NumericalError when the error estimate misses both tolerances.
template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol = kQuadRelTol,
                     double abs_tol = kQuadAbsTol) {
  if (a == b) return {};
  double error = 0;
  double l1 = 0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
      f, a, b, 20, rel_tol, &error, &l1);
  if (!std::isfinite(value)) throw NumericalError("quadrature produced a non-finite value");
  if (error > abs_tol && error > 10.0 * rel_tol * l1)
    throw NumericalError("quadrature did not converge: achieved error " + std::to_string(error) +
                         " for value " + std::to_string(value));
  return {value, error};
}

/// Double-exponential rule for integrands with algebraic endpoint singularities.
/// The integrand is never evaluated at the endpoints themselves.
template <class F>
QuadResult integrate_singular(F&& f, double a, double b, double rel_tol = kQuadRelTol,
                              double abs_tol = kQuadAbsTol) {
  if (a == b) return {};
  thread_local boost::math::quadrature::tanh_sinh<double> rule;  // grows its tables lazily
  double error = 0;
  double l1 = 0;
  const double value = rule.integrate(f, a, b, rel_tol, &error, &l1);
  if (!std::isfinite(value)) throw NumericalError("quadrature produced a non-finite value");
  if (error > abs_tol && error > 10.0 * rel_tol * l1)
    throw NumericalError("quadrature did not converge: achieved error " + std::to_string(error) +
                         " for value " + std::to_string(value));
  return {value, error};
}

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes by Newton iteration on P_n from Chebyshev initial guesses; cached per n.
const GaussLegendre& gauss_legendre(int n);

}  // namespace nnoma
