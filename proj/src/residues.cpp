#include "nnoma/residues.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "nnoma/errors.hpp"

namespace nnoma {

namespace {

constexpr double kMinRelativeGap = 1e-12;

using Wide = boost::multiprecision::cpp_bin_float_quad;

double relative_gap(double rate, double pole_rate) {
  const double delta = rate / pole_rate - 1.0;
  if (std::abs(delta) < kMinRelativeGap) throw DegeneratePoleError("coincident mixture rates");
  return delta;
}

}  // namespace

double ResidueTable::coefficient(std::size_t pole, int i) const {
  const auto& p = poles_[pole];
  return p.normalized[i] * std::pow(p.rate, p.order - i);
}

double ResidueTable::reconstruct(double s) const {
  // partial fractions cancel heavily far from the poles
  Wide q = 0;
  for (const auto& p : poles_) {
    const Wide x = Wide(p.rate) / (Wide(s) + Wide(p.rate));
    for (int i = 0; i < p.order; ++i)
      q += (Wide(p.normalized[i]) + Wide(p.correction[i])) * boost::multiprecision::pow(x, p.order - i);
  }
  return static_cast<double>(q);
}

double direct_q(const Composition& comp, const ExpMixture& mix, double s) {
  double log_q = 0;
  double sign = 1;
  for (std::size_t n = 0; n < comp.parts.size(); ++n) {
    const int k = comp.parts[n];
    if (k == 0) continue;
    const double factor = mix[n].weight * mix[n].rate / (mix[n].rate + s);
    if (factor < 0 && k % 2 == 1) sign = -sign;
    log_q += k * std::log(std::abs(factor));
  }
  return sign * std::exp(log_q);
}

ResidueTable residues(const Composition& comp, const ExpMixture& mix) {
  if (comp.parts.size() != mix.size())
    throw std::invalid_argument("residues: composition length differs from mixture size");
  std::vector<ResidueTable::Pole> poles;
  const std::size_t N = mix.size();
  for (std::size_t n = 0; n < N; ++n) {
    const int kn = comp.parts[n];
    if (kn == 0) continue;
    const double dn = mix[n].rate;

    // Work in units where d_n = 1. Around s' = -1 + t:
    //   h(t) = C * prod_{j != n} (delta_j + t)^{-k_j},  C = prod_j (w_j d_j')^{k_j}.
    Wide a0 = 1;
    std::vector<std::pair<int, Wide>> others;  // (k_j, delta_j)
    for (std::size_t j = 0; j < N; ++j) {
      const int kj = comp.parts[j];
      if (kj == 0) continue;
      const Wide wd = Wide(mix[j].weight) * Wide(mix[j].rate) / Wide(dn);
      a0 *= boost::multiprecision::pow(wd, kj);
      if (j == n) continue;
      relative_gap(mix[j].rate, dn);
      const Wide delta = Wide(mix[j].rate) / Wide(dn) - 1;
      a0 /= boost::multiprecision::pow(delta, kj);
      others.emplace_back(kj, delta);
    }

    // Taylor coefficients of (log h)' = sum_j -k_j / (delta_j + t).
    std::vector<Wide> b(kn, Wide(0));
    for (const auto& [kj, delta] : others) {
      Wide inv = 1 / delta;
      for (int l = 0; l < kn; ++l) {
        b[l] -= (l % 2 == 0 ? kj : -kj) * inv;
        inv /= delta;
      }
    }
    std::vector<Wide> a(kn, Wide(0));
    a[0] = a0;
    for (int i = 0; i + 1 < kn; ++i) {
      Wide s = 0;
      for (int l = 0; l <= i; ++l) s += b[l] * a[i - l];
      a[i + 1] = s / (i + 1);
    }
    ResidueTable::Pole pole{n, kn, dn, {}, {}};
    for (const auto& v : a) {
      const double hi = static_cast<double>(v);
      pole.normalized.push_back(hi);
      pole.correction.push_back(static_cast<double>(v - Wide(hi)));
    }
    poles.push_back(std::move(pole));
  }
  return ResidueTable(std::move(poles));
}

std::vector<std::vector<double>> power_residues(const ExpMixture& mix, int m) {
  if (m < 1) throw std::invalid_argument("power_residues: m must be positive");
  const std::size_t N = mix.size();
  std::vector<std::vector<double>> out(N);
  for (std::size_t n = 0; n < N; ++n) {
    const double dn = mix[n].rate;
    // With d_n = 1: (s'+1) Q(s') at s' = -1 + t is
    //   g(t) = w_n + t * sum_{j != n} w_j d_j' / (delta_j + t).
    std::vector<double> g(m, 0.0);
    g[0] = mix[n].weight;
    for (std::size_t j = 0; j < N; ++j) {
      if (j == n) continue;
      const double wd = mix[j].weight * mix[j].rate / dn;
      const double delta = relative_gap(mix[j].rate, dn);
      double inv_pow = 1.0 / delta;
      for (int l = 0; l + 1 < m; ++l) {
        g[l + 1] += wd * ((l % 2 == 0) ? 1.0 : -1.0) * inv_pow;
        inv_pow /= delta;
      }
    }
    if (g[0] == 0) throw DegeneratePoleError("power_residues: zero mixture weight");
    // Taylor coefficients of g^m (J.C.P. Miller recurrence).
    std::vector<double> p(m, 0.0);
    p[0] = std::pow(g[0], m);
    for (int k = 1; k < m; ++k) {
      double s = 0;
      for (int i = 1; i <= k; ++i) s += ((m + 1.0) * i - k) * g[i] * p[k - i];
      p[k] = s / (k * g[0]);
    }
    // [t^i] g^m is the coefficient of 1/(s'+1)^{m-i}.
    out[n].assign(m, 0.0);
    for (int i = 0; i < m; ++i) out[n][m - i - 1] = p[i];
  }
  return out;
}

}  // namespace nnoma
