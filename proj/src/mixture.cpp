#include "nnoma/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nnoma/errors.hpp"

namespace nnoma {

std::vector<double> chebyshev_nodes(int N) {
  if (N < 1) throw std::invalid_argument("chebyshev_nodes: N must be positive");
  std::vector<double> theta(N);
  for (int n = 1; n <= N; ++n) theta[n - 1] = std::cos((2.0 * n - 1.0) / (2.0 * N) * std::numbers::pi);
  // cos(pi/2) is 6e-17 in floating point; the midpoint node is exactly zero.
  if (N % 2 == 1) theta[N / 2] = 0.0;
  return theta;
}

ExpMixture::ExpMixture(MixtureKind kind, std::vector<MixtureTerm> terms)
    : kind_(kind), terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end(),
            [](const MixtureTerm& a, const MixtureTerm& b) { return a.rate < b.rate; });
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].rate > 0) || !std::isfinite(terms_[i].rate))
      throw ValidationError("mixture rates must be positive and finite");
    if (i > 0 && terms_[i].rate <= terms_[i - 1].rate)
      throw DegeneratePoleError("mixture rates must be distinct");
  }
}

double ExpMixture::weight_sum() const {
  double s = 0;
  for (const auto& t : terms_) s += t.weight;
  return s;
}

double ExpMixture::cdf(double z) const {
  if (z <= 0) return kind_ == MixtureKind::coop_gain_pdf ? 0.0 : 1.0 - weight_sum();
  double s = 0;
  if (kind_ == MixtureKind::coop_gain_pdf) {
    for (const auto& t : terms_) s += t.weight * -std::expm1(-t.rate * z);
    return s;
  }
  for (const auto& t : terms_) s += t.weight * std::exp(-t.rate * z);
  return 1.0 - s;
}

double ExpMixture::pdf(double z) const {
  if (z < 0) return 0.0;
  double s = 0;
  for (const auto& t : terms_) s += t.weight * t.rate * std::exp(-t.rate * z);
  return s;
}

double normalization_bound(int N) {
  return std::numbers::pi * std::numbers::pi / (12.0 * N * N);
}

ExpMixture coop_gain_mixture(double r_inner, double r_outer, double alpha, int N) {
  const auto theta = chebyshev_nodes(N);
  const double half_width = (r_outer - r_inner) / 2.0;
  const double mid = (r_outer + r_inner) / 2.0;
  const double ratio = (r_outer - r_inner) / (r_outer + r_inner);
  std::vector<MixtureTerm> terms;
  terms.reserve(N);
  for (double t : theta) {
    const double w = std::numbers::pi / (2.0 * N) * std::sqrt(1.0 - t * t) * (ratio * t + 1.0);
    const double d = std::pow(half_width * t + mid, alpha);
    terms.push_back({w, d});
  }
  return ExpMixture(MixtureKind::coop_gain_pdf, std::move(terms));
}

ExpMixture coop_gain_mixture(const SystemParams& p, int N) {
  return coop_gain_mixture(p.R_bar, p.R_D, p.alpha, N);
}

ExpMixture cluster_gain_mixture(double r_disc, double alpha, int N) {
  const auto theta = chebyshev_nodes(N);
  std::vector<MixtureTerm> terms;
  terms.reserve(N);
  for (double t : theta) {
    const double w = std::numbers::pi / (2.0 * N) * std::sqrt(1.0 - t * t) * (t + 1.0);
    const double c = std::pow(r_disc / 2.0 * t + r_disc / 2.0, alpha);
    terms.push_back({w, c});
  }
  return ExpMixture(MixtureKind::cluster_gain_ccdf, std::move(terms));
}

ExpMixture cluster_gain_mixture(const SystemParams& p, int N) {
  return cluster_gain_mixture(p.R_c, p.alpha, N);
}

}  // namespace nnoma
