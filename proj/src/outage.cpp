#include "nnoma/outage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "nnoma/compositions.hpp"
#include "nnoma/errors.hpp"
#include "nnoma/gamma.hpp"
#include "nnoma/quadrature.hpp"
#include "nnoma/residues.hpp"

namespace nnoma {

namespace {

void check_cancellation(double bound) {
  if (!(bound <= kMaxCancellation))
    throw NumericalError("partial-fraction cancellation bound " + std::to_string(bound) + " exceeds " +
                         std::to_string(kMaxCancellation) + "; M_A or lambda_c is too large");
}

constexpr double kPi = std::numbers::pi;
constexpr double kArccosSlack = 1e-9;

// Magnitude-sorted Neumaier summation.
double stable_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  double sum = 0, comp = 0;
  for (double t : terms) {
    const double s = sum + t;
    comp += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
  }
  return sum + comp;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double overshoot(double v) { return std::max({0.0, -v, v - 1.0}); }

}  // namespace

void AnalyticAccuracy::validate() const {
  if (N < 1) throw ValidationError("N must be >= 1");
  if (M_A < 0) throw ValidationError("M_A must be >= 1 (or 0 for automatic)");
  if (K_A < 1) throw ValidationError("K_A must be >= 1");
  if (quad_points < 1) throw ValidationError("quad_points must be >= 1");
  if (!(max_compositions >= 1)) throw ValidationError("max_compositions must be >= 1");
  if (!(poisson_tail_bound > 0)) throw ValidationError("poisson_tail_bound must be positive");
}

double poisson_count_pmf(int m, const SystemParams& p) {
  if (m < 0) return 0;
  const double mean = p.mean_cooperating();
  if (mean == 0) return m == 0 ? 1.0 : 0.0;
  return std::exp(m * std::log(mean) - mean - std::lgamma(m + 1.0));
}

double poisson_count_tail(int m, const SystemParams& p) {
  const double mean = p.mean_cooperating();
  if (m < 0) return 1.0;
  if (mean == 0) return 0.0;
  // Pr(M > m) = P(m + 1, mean), the regularized lower incomplete gamma
  return boost::math::gamma_p(m + 1.0, mean);
}

int effective_poisson_truncation(const SystemParams& p, const AnalyticAccuracy& acc) {
  if (acc.M_A > 0) return acc.M_A;
  const double mean = p.mean_cooperating();
  int m = std::max(1, static_cast<int>(std::ceil(mean + 6.0 * std::sqrt(mean))));
  while (poisson_count_tail(m, p) >= acc.poisson_tail_bound) ++m;
  return m;
}

CompOutageEvaluator::CompOutageEvaluator(const SystemParams& p, const AnalyticAccuracy& acc, int max_m)
    : acc_(acc), max_m_(max_m), mixture_(coop_gain_mixture(p, acc.N)) {
  acc_.validate();
  const double denom = p.beta0_sq - p.beta1_sq * p.eps0;
  if (!(denom > 0)) throw ValidationError("CompOutageEvaluator requires a SIC-feasible power split");
  const auto field = comp_interference(p);
  const int order = std::max(1, max_m) + acc_.K_A + 1;
  for (const auto& term : mixture_.terms()) {
    const double mu = term.rate * p.eps0 / denom;
    mus_.push_back(mu);
    auto a = scaled_laplace_terms(mu, order, field);
    std::vector<double> prefix(a.size() + 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) prefix[i + 1] = prefix[i] + a[i];
    scaled_.push_back(std::move(a));
    prefix_.push_back(std::move(prefix));
  }
}

// sum_{k=0}^{K_A} (-mu)^{j+k} L^{(j+k)}(mu) / (j+k)!
double CompOutageEvaluator::explicit_terms(std::size_t n, int j) const {
  return prefix_[n][j + acc_.K_A + 1] - prefix_[n][j];
}

// sum_{k > K_A} of the same series; all scaled terms sum to one.
double CompOutageEvaluator::closed_remainder(std::size_t n, int j) const {
  return std::max(0.0, 1.0 - prefix_[n][j + acc_.K_A + 1]);
}

ConditionalOutage CompOutageEvaluator::finish(std::vector<double>& terms, double remainder) const {
  ConditionalOutage out;
  double magnitude = 0;
  for (double t : terms) magnitude += std::abs(t);
  out.raw = stable_sum(terms);
  out.value = clamp01(out.raw);
  // with the closed tail added back, truncation leaves only rounding, counted in cancellation
  out.series_remainder = acc_.tail_closure ? 0.0 : remainder;
  out.cancellation = magnitude * kLaplaceTermAccuracy;
  return out;
}

ConditionalOutage CompOutageEvaluator::conditional(int m) const {
  if (m <= 0) return {1.0, 1.0, 0.0, 0.0};
  if (m > max_m_) throw std::out_of_range("CompOutageEvaluator: m exceeds the prepared range");
  const std::size_t N = mixture_.size();
  std::vector<double> terms;
  double remainder = 0;

  auto add = [&](double coefficient, std::size_t n, int j) {
    terms.push_back(coefficient * explicit_terms(n, j));
    const double tail = closed_remainder(n, j);
    if (acc_.tail_closure) terms.push_back(coefficient * tail);
    remainder += std::abs(coefficient * tail);
  };

  if (acc_.method == ConditionalMethod::aggregated) {
    const auto pf = power_residues(mixture_, m);
    for (std::size_t n = 0; n < N; ++n)
      for (int j = 1; j <= m; ++j) add(pf[n][j - 1], n, j);
    return finish(terms, remainder);
  }

  const double count = composition_count(m, static_cast<int>(N));
  if (count > acc_.max_compositions)
    throw ComplexityError("composition count " + std::to_string(count) + " for m=" + std::to_string(m) +
                          ", N=" + std::to_string(N) + " exceeds the budget; reduce N or M_A");
  CompositionStream stream(m, static_cast<int>(N));
  for (const auto& comp : stream) {
    const auto table = residues(comp, mixture_);
    for (std::size_t k = 0; k < table.poles().size(); ++k) {
      const auto& pole = table.poles()[k];
      for (int i = 0; i < pole.order; ++i) add(comp.multinomial * pole.normalized[i], pole.term, pole.order - i);
    }
  }
  return finish(terms, remainder);
}

ConditionalOutage comp_outage_conditional(int m, const SystemParams& p, const AnalyticAccuracy& acc) {
  if (m <= 0 || !sic_feasible(p)) return {1.0, 1.0, 0.0, 0.0};
  const auto out = CompOutageEvaluator(p, acc, m).conditional(m);
  check_cancellation(out.cancellation);
  return out;
}

CompOutage comp_outage(const SystemParams& p, const AnalyticAccuracy& acc) {
  acc.validate();
  CompOutage out;
  out.M_A = effective_poisson_truncation(p, acc);
  out.poisson_tail = poisson_count_tail(out.M_A, p);
  if (!sic_feasible(p)) {
    out.conditional.assign(out.M_A + 1, 1.0);
    return out;
  }
  CompOutageEvaluator eval(p, acc, out.M_A);
  std::vector<double> terms;
  out.conditional.reserve(out.M_A + 1);
  for (int m = 0; m <= out.M_A; ++m) {
    const auto c = eval.conditional(m);
    const double pmf = poisson_count_pmf(m, p);
    out.conditional.push_back(c.value);
    terms.push_back(pmf * c.value);
    out.series_remainder += pmf * c.series_remainder;
    out.cancellation += pmf * c.cancellation;
  }
  check_cancellation(out.cancellation);
  terms.push_back(out.poisson_tail * out.conditional.back());
  out.raw = stable_sum(terms);
  out.p0 = clamp01(out.raw);
  return out;
}

double noma_threshold(const SystemParams& p) {
  const double comp_branch = p.eps0 / (p.beta0_sq - p.beta1_sq * p.eps0);
  const double own_branch = p.epsi / p.beta1_sq;
  return std::max(comp_branch, own_branch);
}

namespace {

// int_{d-R}^{d+R} r s / (r^alpha + s) arccos((r^2 + d^2 - R^2) / (2 r d)) dr
QuadResult exclusion_integral(double d, double s, double R, double alpha) {
  auto integrand = [&](double r) {
    if (r <= 0) return 0.0;
    const double c = (r * r + d * d - R * R) / (2.0 * r * d);
    if (std::abs(c) > 1.0 + kArccosSlack)
      throw GeometryError("arccos argument " + std::to_string(c) + " outside [-1, 1] at r=" + std::to_string(r) +
                          ", d=" + std::to_string(d));
    return r * s / (std::pow(r, alpha) + s) * std::acos(std::clamp(c, -1.0, 1.0));
  };
  // r = mid - half cos(phi) absorbs the square-root behaviour of arccos at both ends
  const double lo = std::max(0.0, d - R), hi = d + R;
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  auto smooth = [&](double phi) { return integrand(mid - half * std::cos(phi)) * half * std::sin(phi); };
  return integrate(smooth, 0.0, std::numbers::pi, kQuadRelTol, 0.0);
}

struct OuterIntegral {
  double value = 0;
  double error = 0;
};

// int_{R_bar}^{R_D} 2d/(R_D^2 - R_bar^2) exp(2 lambda J(d)) dd with an n-point rule.
OuterIntegral outer_integral(const SystemParams& p, double s, int n) {
  const auto& rule = gauss_legendre(n);
  const double half = (p.R_D - p.R_bar) / 2.0;
  const double mid = (p.R_D + p.R_bar) / 2.0;
  const double area = p.R_D * p.R_D - p.R_bar * p.R_bar;
  OuterIntegral out;
  for (int q = 0; q < n; ++q) {
    const double d = half * rule.nodes[q] + mid;
    const auto J = exclusion_integral(d, s, p.R_bar, p.alpha);
    const double e = std::exp(2.0 * p.lambda_c * J.value);
    const double w = rule.weights[q] * half * 2.0 * d / area;
    out.value += w * e;
    out.error += w * e * 2.0 * p.lambda_c * J.error;
  }
  return out;
}

}  // namespace

NomaOutage noma_outage(const SystemParams& p, const AnalyticAccuracy& acc) {
  acc.validate();
  NomaOutage out;
  if (!sic_feasible(p) || p.beta1_sq <= 0) return out;

  const double eps_bar = noma_threshold(p);
  const auto mix = cluster_gain_mixture(p, acc.N);
  const int N = static_cast<int>(mix.size());
  const double beta_term = beta_fn(2.0 / p.alpha, (p.alpha - 2.0) / p.alpha);
  const int half_points = std::max(1, acc.quad_points / 2);

  std::vector<double> terms{1.0};
  CompositionStream stream(p.K, N + 1);
  for (const auto& comp : stream) {
    if (comp.parts[0] == p.K) continue;
    double xi = 0;
    double log_mag = comp.log_multinomial;
    double sign = 1;
    for (int n = 1; n <= N; ++n) {
      const int k = comp.parts[n];
      if (k == 0) continue;
      const double c = mix[n - 1].rate;
      xi += k * c;
      // (-w_n)^k e^{-k c eps_bar / rho}
      log_mag += k * std::log(mix[n - 1].weight) - k * c * eps_bar / p.rho;
      if (k % 2 == 1) sign = -sign;
    }
    const double s = xi * eps_bar;
    const double plane = std::exp(-2.0 * kPi * p.lambda_c * std::pow(s, 2.0 / p.alpha) * beta_term / p.alpha);
    const double prefactor = sign * std::exp(log_mag) * plane;
    const auto full = outer_integral(p, s, acc.quad_points);
    const auto coarse = outer_integral(p, s, half_points);
    terms.push_back(prefactor * full.value);
    out.quad_error += std::abs(prefactor) * (std::abs(full.value - coarse.value) + full.error);
  }
  out.raw = stable_sum(terms);
  out.pi = clamp01(out.raw);
  return out;
}

double turning_point(double eps0, double epsi) {
  return (eps0 + epsi * eps0) / (eps0 + epsi * eps0 + epsi);
}

SumRates outage_sum_rate(const SystemParams& p, const AnalyticAccuracy& acc) {
  const double p0 = comp_outage(p, acc).p0;
  const double pi = noma_outage(p, acc).pi;
  const double p0_oma = comp_outage(oma_params(p), acc).p0;
  const double mean = p.mean_cooperating();
  const double p_pos = -std::expm1(-mean);
  return {(1.0 - p0) * p.R0_bpcu / mean + p_pos * (1.0 - pi) * p.Ri_bpcu, (1.0 - p0_oma) * p.R0_bpcu / mean,
          p0_oma};
}

OutageReport analyze(const SystemParams& p, const AnalyticAccuracy& acc) {
  OutageReport r;
  const auto comp = comp_outage(p, acc);
  const auto noma = noma_outage(p, acc);
  const auto oma = comp_outage(oma_params(p), acc);
  const double mean = p.mean_cooperating();
  r.p0 = comp.p0;
  r.p0_raw = comp.raw;
  r.pi = noma.pi;
  r.pi_raw = noma.raw;
  r.M_A = comp.M_A;
  r.poisson_tail = comp.poisson_tail;
  r.series_remainder = comp.series_remainder;
  r.cancellation = comp.cancellation;
  r.quad_error = noma.quad_error;
  r.clamp_overshoot = std::max(overshoot(comp.raw), overshoot(noma.raw));
  r.p0_oma = oma.p0;
  r.p_m_positive = -std::expm1(-mean);
  r.sum_rate_nnoma = (1.0 - r.p0) * p.R0_bpcu / mean + r.p_m_positive * (1.0 - r.pi) * p.Ri_bpcu;
  r.sum_rate_oma = (1.0 - r.p0_oma) * p.R0_bpcu / mean;
  return r;
}

}  // namespace nnoma
