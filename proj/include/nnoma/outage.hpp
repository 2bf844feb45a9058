#pragma once

#include <vector>

#include "nnoma/laplace.hpp"
#include "nnoma/mixture.hpp"
#include "nnoma/params.hpp"

namespace nnoma {

/// How the sum over compositions of m into N parts is carried out.
enum class ConditionalMethod {
  /// Pole-by-pole expansion of (sum_n w_n d_n / (d_n + s))^m; O(N m^2) per m.
  aggregated,
  /// Explicit enumeration with one residue table per composition.
  compositions,
};

/// Truncation and approximation knobs of the analytic evaluators.
/// Relative accuracy of the scaled Laplace terms; scales the cancellation bound.
inline constexpr double kLaplaceTermAccuracy = 1e-12;

/// Largest tolerated cancellation bound before NumericalError.
inline constexpr double kMaxCancellation = 1e-3;

struct AnalyticAccuracy {
  int N = 10;             // Chebyshev terms
  int M_A = 0;            // Poisson-count truncation; 0 selects it automatically
  int K_A = 5;            // explicitly summed terms of the incomplete-gamma series
  int quad_points = 64;   // outer Gauss-Legendre nodes for the NOMA outage
  bool tail_closure = true;  // add the exact remainder of the incomplete-gamma series
  ConditionalMethod method = ConditionalMethod::aggregated;
  double max_compositions = 5e6;
  double poisson_tail_bound = 1e-4;

  /// Throws ValidationError unless every knob is >= 1.
  void validate() const;
};

/// Poisson pmf of the number of cooperating BSs, (lambda S_C)^m e^{-lambda S_C} / m!.
double poisson_count_pmf(int m, const SystemParams& p);

/// Pr(M > m).
double poisson_count_tail(int m, const SystemParams& p);

/// M_A actually used: acc.M_A if set, otherwise ceil(mean + 6 sqrt(mean))
/// raised until the Poisson tail is below acc.poisson_tail_bound.
int effective_poisson_truncation(const SystemParams& p, const AnalyticAccuracy& acc);

struct ConditionalOutage {
  double value = 1;             // clamped to [0, 1]
  double raw = 1;               // before clamping
  double series_remainder = 0;  // K_A truncation error: sum of dropped |coefficient * tail|; 0 with tail_closure
  double cancellation = 0;      // rounding bound of the signed partial-fraction sum
};

/// Conditional CoMP-user outage given m cooperating BSs. Shares the mixture
/// and the Laplace-derivative tables across all m <= max_m.
class CompOutageEvaluator {
 public:
  CompOutageEvaluator(const SystemParams& p, const AnalyticAccuracy& acc, int max_m);

  ConditionalOutage conditional(int m) const;

  const ExpMixture& mixture() const { return mixture_; }
  /// mu_n = d_n eps0 / (beta0^2 - beta1^2 eps0) for every mixture term.
  const std::vector<double>& mus() const { return mus_; }

 private:
  double explicit_terms(std::size_t n, int j) const;
  double closed_remainder(std::size_t n, int j) const;
  ConditionalOutage finish(std::vector<double>& terms, double remainder) const;

  AnalyticAccuracy acc_;
  int max_m_;
  ExpMixture mixture_;
  std::vector<double> mus_;
  std::vector<std::vector<double>> scaled_;  // per pole: (-mu)^j L^{(j)}(mu) / j!
  std::vector<std::vector<double>> prefix_;  // per pole: sum_{i<j} scaled_[i]
};

/// Convenience wrapper around CompOutageEvaluator for a single m. Returns 1 when
/// SIC is infeasible or m = 0.
ConditionalOutage comp_outage_conditional(int m, const SystemParams& p, const AnalyticAccuracy& acc);

struct CompOutage {
  double p0 = 1;
  double raw = 1;
  int M_A = 0;
  double poisson_tail = 0;      // Pr(M > M_A), assigned P_{0,M_A}
  double series_remainder = 0;  // pmf-weighted K_A truncation error
  double cancellation = 0;      // pmf-weighted rounding bound
  std::vector<double> conditional;  // P_{0,m}, m = 0..M_A
};

/// CoMP-user outage probability.
CompOutage comp_outage(const SystemParams& p, const AnalyticAccuracy& acc);

struct NomaOutage {
  double pi = 1;
  double raw = 1;
  double quad_error = 0;  // outer half-rule difference plus propagated inner errors
};

/// Effective NOMA threshold max{eps0 / (beta0^2 - beta1^2 eps0), epsi / beta1^2}.
double noma_threshold(const SystemParams& p);

/// Outage of the NOMA user served by a randomly chosen cooperating BS.
NomaOutage noma_outage(const SystemParams& p, const AnalyticAccuracy& acc);

/// beta0^2 at which the two arguments of noma_threshold() coincide.
double turning_point(double eps0, double epsi);

struct SumRates {
  double nnoma = 0;
  double oma = 0;
  double p0_oma = 1;
};

/// Outage sum rate per BS of N-NOMA and of the OMA baseline (beta0^2 = 1).
SumRates outage_sum_rate(const SystemParams& p, const AnalyticAccuracy& acc);

/// All analytic quantities for one parameter point.
struct OutageReport {
  double p0 = 1;
  double pi = 1;
  double p0_raw = 1;
  double pi_raw = 1;
  int M_A = 0;
  double poisson_tail = 0;
  double series_remainder = 0;
  double cancellation = 0;
  double quad_error = 0;
  double clamp_overshoot = 0;  // max distance of a raw probability outside [0, 1]
  double p0_oma = 1;
  double sum_rate_nnoma = 0;
  double sum_rate_oma = 0;
  double p_m_positive = 0;
};

OutageReport analyze(const SystemParams& p, const AnalyticAccuracy& acc);

}  // namespace nnoma
