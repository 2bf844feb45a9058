#pragma once

namespace nnoma {

/// Lower incomplete gamma for integer s >= 1 via the finite closed form
///   gamma(s, x) = (s-1)! (1 - e^{-x} sum_{j<s} x^j / j!).
double lower_inc_gamma(int s, double x);

/// Same quantity from the series
///   gamma(s, x) = Gamma(s) sum_{k>=0} x^{s+k} e^{-x} / Gamma(s+k+1),
/// truncated after `max_terms` terms or once terms stop changing the sum.
double lower_inc_gamma_series(int s, double x, int max_terms = 100000);

/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
double beta_fn(double a, double b);

}  // namespace nnoma
