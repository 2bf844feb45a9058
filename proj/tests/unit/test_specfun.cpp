#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "nnoma/compositions.hpp"
#include "nnoma/config.hpp"
#include "nnoma/errors.hpp"
#include "nnoma/gamma.hpp"
#include "nnoma/laplace.hpp"
#include "nnoma/mixture.hpp"
#include "nnoma/quadrature.hpp"
#include "nnoma/residues.hpp"

using namespace nnoma;

namespace {

SystemParams defaults() { return build_params(default_raw_params()); }

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Kolmogorov distance between samples and a cdf.
template <class Cdf>
double ks_distance(std::vector<double> xs, Cdf F) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = F(xs[i]);
    d = std::max({d, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
  }
  return d;
}

std::vector<double> sample_annulus_gain(double r_in, double r_out, double alpha, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(r_in * r_in, r_out * r_out);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> out(n);
  for (auto& z : out) z = e(rng) / std::pow(u(rng), alpha / 2);
  return out;
}

Composition make_comp(std::vector<int> parts) {
  int total = 0;
  for (int k : parts) total += k;
  return {parts, total, multinomial_coefficient(parts), std::log(multinomial_coefficient(parts))};
}

}  // namespace

TEST_CASE("chebyshev nodes") {
  CHECK(chebyshev_nodes(1) == std::vector<double>{0.0});
  const auto n2 = chebyshev_nodes(2);
  CHECK(n2[0] == doctest::Approx(0.70711).epsilon(1e-5));
  CHECK(n2[1] == doctest::Approx(-0.70711).epsilon(1e-5));
  CHECK(chebyshev_nodes(10)[0] == doctest::Approx(0.98769).epsilon(1e-5));
  CHECK(chebyshev_nodes(7)[3] == 0.0);
}

TEST_CASE("single-term mixtures sit at the midpoint") {
  const auto p = defaults();
  const auto coop = coop_gain_mixture(p, 1);
  REQUIRE(coop.size() == 1);
  CHECK(coop[0].rate == doctest::Approx(8.1e9).epsilon(1e-14));
  // N = 1 is not normalized: its weight is pi/2
  CHECK(coop[0].weight == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
  const auto clus = cluster_gain_mixture(p, 1);
  CHECK(clus[0].rate == doctest::Approx(50625.0).epsilon(1e-14));
}

TEST_CASE("mixture normalization") {
  const auto p = defaults();
  CHECK(std::abs(coop_gain_mixture(p, 10).weight_sum() - 1) <= 1e-2);
  CHECK(std::abs(cluster_gain_mixture(p, 10).weight_sum() - 1) <= 1e-2);
  CHECK(std::abs(cluster_gain_mixture(p, 10).cdf(0.0)) <= 1e-2);
  for (int N : {5, 10, 20}) {
    CAPTURE(N);
    CHECK(std::abs(coop_gain_mixture(p, N).weight_sum() - 1) <= normalization_bound(N));
    CHECK(std::abs(cluster_gain_mixture(p, N).weight_sum() - 1) <= normalization_bound(N));
    for (const auto& t : cluster_gain_mixture(p, N).terms()) CHECK(t.weight > 0);
  }
}

TEST_CASE("mixture mass against the exact density by quadrature") {
  const auto p = defaults();
  // int_0^inf f_exact = int over r of the annulus density (the z-integral of r^a e^{-r^a z} is 1)
  const double exact_mass = integrate(
      [&](double r) {
        const double zmax_mass = 1.0;  // int_0^inf r^a e^{-r^a z} dz
        return 2 * r / (p.R_D * p.R_D - p.R_bar * p.R_bar) * zmax_mass;
      },
      p.R_bar, p.R_D).value;
  CHECK(exact_mass == doctest::Approx(1.0).epsilon(1e-12));
  // cdf of the exact law at a few points vs the mixture
  for (double z : {1e-11, 5e-11, 1e-10, 1e-9}) {
    const double exact = integrate(
        [&](double r) { return 2 * r / (p.R_D * p.R_D - p.R_bar * p.R_bar) * -std::expm1(-std::pow(r, p.alpha) * z); },
        p.R_bar, p.R_D).value;
    CHECK(std::abs(coop_gain_mixture(p, 10).cdf(z) - exact) <= 1e-2);
  }
}

TEST_CASE("mixture cdfs match sampled gains in Kolmogorov distance") {
  const auto p = defaults();
  const int n = 100000;
  for (int N : {5, 10, 20}) {
    CAPTURE(N);
    const double slack = N == 10 ? 0.0 : normalization_bound(N);
    const auto coop = coop_gain_mixture(p, N);
    const double d1 = ks_distance(sample_annulus_gain(p.R_bar, p.R_D, p.alpha, n, 11),
                                  [&](double z) { return coop.cdf(z); });
    CHECK(d1 <= 0.01 + slack);
    const auto clus = cluster_gain_mixture(p, N);
    const double d2 = ks_distance(sample_annulus_gain(0.0, p.R_c, p.alpha, n, 12),
                                  [&](double z) { return clus.cdf(z); });
    CHECK(d2 <= 0.01 + slack);
  }
}

TEST_CASE("mixture rejects repeated or non-positive rates") {
  CHECK_THROWS_AS(ExpMixture(MixtureKind::coop_gain_pdf, {{0.5, 2.0}, {0.5, 2.0}}), DegeneratePoleError);
  CHECK_THROWS_AS(ExpMixture(MixtureKind::coop_gain_pdf, {{1.0, 0.0}}), ValidationError);
  const ExpMixture m(MixtureKind::coop_gain_pdf, {{0.5, 3.0}, {0.5, 1.0}});
  CHECK(m[0].rate == 1.0);
  CHECK(m[1].rate == 3.0);
}

TEST_CASE("compositions: small cases") {
  std::vector<std::vector<int>> parts;
  std::vector<double> mult;
  for (const auto& c : CompositionStream(2, 2)) {
    parts.push_back(c.parts);
    mult.push_back(c.multinomial);
  }
  CHECK(parts == std::vector<std::vector<int>>{{2, 0}, {1, 1}, {0, 2}});
  CHECK(mult == std::vector<double>{1, 2, 1});

  int count = 0;
  for (const auto& c : CompositionStream(0, 6)) {
    CHECK(c.parts == std::vector<int>(6, 0));
    CHECK(c.multinomial == 1);
    ++count;
  }
  CHECK(count == 1);
}

TEST_CASE("compositions: (10, 10) count") {
  long count = 0;
  for ([[maybe_unused]] const auto& c : CompositionStream(10, 10)) ++count;
  CHECK(count == 92378);
  CHECK(composition_count(10, 10) == 92378);
}

TEST_CASE("compositions: stars and bars, uniqueness, multinomials") {
  for (int total = 0; total <= 12; ++total) {
    for (int parts = 1; parts <= 12; ++parts) {
      long count = 0;
      double mult_sum = 0;
      std::set<std::vector<int>> seen;
      const bool small = composition_count(total, parts) <= 20000;
      for (const auto& c : CompositionStream(total, parts)) {
        ++count;
        mult_sum += c.multinomial;
        if (small) seen.insert(c.parts);
        int s = 0;
        for (int k : c.parts) s += k;
        if (s != total) FAIL("part sum");
      }
      CHECK(count == static_cast<long>(composition_count(total, parts)));
      // sum of multinomials = parts^total
      CHECK(mult_sum == doctest::Approx(std::pow(parts, total)).epsilon(1e-12));
      if (small) CHECK(static_cast<long>(seen.size()) == count);
    }
  }
  CHECK(multinomial_coefficient({3, 2, 1}) == 60);
  CHECK(multinomial_coefficient({30, 0}) == 1);
}

TEST_CASE("residues: hand cases") {
  const ExpMixture one(MixtureKind::coop_gain_pdf, {{0.7, 5.0}});
  const auto t1 = residues(make_comp({1}), one);
  CHECK(t1.coefficient(0, 0) == doctest::Approx(0.7 * 5.0).epsilon(1e-14));

  const double w1 = 0.3, d1 = 2.0, w2 = 0.6, d2 = 7.0;
  const ExpMixture two(MixtureKind::coop_gain_pdf, {{w1, d1}, {w2, d2}});
  const auto t2 = residues(make_comp({1, 1}), two);
  REQUIRE(t2.poles().size() == 2);
  CHECK(t2.coefficient(0, 0) == doctest::Approx(w1 * d1 * w2 * d2 / (d2 - d1)).epsilon(1e-13));
  CHECK(t2.coefficient(1, 0) == doctest::Approx(w1 * d1 * w2 * d2 / (d1 - d2)).epsilon(1e-13));
}

TEST_CASE("residues: reconstruction on random compositions") {
  const auto mix = coop_gain_mixture(defaults(), 10);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> total(1, 12);
  const double dmin = mix[0].rate;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> parts(10, 0);
    const int m = total(rng);
    std::uniform_int_distribution<int> slot(0, 9);
    for (int i = 0; i < m; ++i) ++parts[slot(rng)];
    const auto comp = make_comp(parts);
    const auto table = residues(comp, mix);
    for (double s : {0.0, dmin / 2, 1.0, 10.0, 100 * dmin}) {
      const double direct = direct_q(comp, mix, s);
      CHECK(rel_err(table.reconstruct(s), direct) <= 1e-8);
    }
  }
}

TEST_CASE("residues: aggregated powers equal the composition sum") {
  const auto mix = coop_gain_mixture(defaults(), 5);
  for (int m = 1; m <= 6; ++m) {
    const auto agg = power_residues(mix, m);
    std::vector<std::vector<double>> sum(mix.size(), std::vector<double>(m, 0.0));
    for (const auto& c : CompositionStream(m, 5)) {
      const auto t = residues(c, mix);
      for (std::size_t i = 0; i < t.poles().size(); ++i) {
        const auto& pole = t.poles()[i];
        for (int r = 0; r < pole.order; ++r) sum[pole.term][pole.order - r - 1] += c.multinomial * pole.normalized[r];
      }
    }
    double scale = 0;
    for (const auto& row : sum)
      for (double v : row) scale = std::max(scale, std::abs(v));
    for (std::size_t n = 0; n < mix.size(); ++n)
      for (int j = 0; j < m; ++j) CHECK(std::abs(agg[n][j] - sum[n][j]) <= 1e-9 * scale);
  }
}

TEST_CASE("incomplete gamma: closed form") {
  CHECK(lower_inc_gamma(1, 0.0) == 0.0);
  for (double x : {0.1, 1.0, 7.5}) CHECK(lower_inc_gamma(1, x) == doctest::Approx(-std::expm1(-x)).epsilon(1e-15));
  CHECK(lower_inc_gamma(2, 1.0) == doctest::Approx(1 - 2 * std::exp(-1.0)).epsilon(1e-14));
  CHECK(lower_inc_gamma(2, 1.0) == doctest::Approx(0.26424).epsilon(1e-5));
}

TEST_CASE("incomplete gamma: closed form equals the converged series") {
  for (int s = 1; s <= 10; ++s)
    for (double x : {0.0, 1e-3, 0.5, 1.0, 3.0, 10.0, 25.0, 50.0}) {
      CAPTURE(s);
      CAPTURE(x);
      const double a = lower_inc_gamma(s, x), b = lower_inc_gamma_series(s, x);
      CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("beta function") {
  CHECK(beta_fn(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(beta_fn(0.5, 0.5) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
  const double alpha = 4;
  CHECK(beta_fn(2 / alpha, (alpha - 2) / alpha) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("hypergeometric: zero argument and the arctan identity") {
  CHECK(hyp2f1_b1(0.3, 1.7, 0.0) == 1.0);
  for (double x : {0.1, 1.0, 10.0}) {
    CAPTURE(x);
    CHECK(rel_err(hyp2f1_b1(0.5, 1.5, -x * x), std::atan(x) / x) <= 1e-12);
  }
}

TEST_CASE("tau: integral route against the closed form") {
  const auto p = defaults();
  const auto f = comp_interference(p);
  CHECK(tau(0.0, f) == 0.0);
  for (double x : {0.1, 1.0, 10.0}) {
    // alpha = 4: mu = x^2 R_D^4 puts the 2F1 argument at -x^2
    const double mu = x * x * std::pow(p.R_D, 4);
    const double arctan_form =
        -mu / p.rho - 2 * std::numbers::pi * p.lambda_c * mu * std::pow(p.R_D, -2.0) / 2.0 * std::atan(x) / x;
    CHECK(rel_err(tau(mu, f), arctan_form) <= 1e-8);
    CHECK(rel_err(tau_hypergeometric(mu, f), arctan_form) <= 1e-8);
  }
  // another exponent, routes only
  auto f3 = f;
  f3.alpha = 3.3;
  for (double mu : {1e6, 1e9, 1e12}) CHECK(rel_err(tau(mu, f3), tau_hypergeometric(mu, f3)) <= 1e-8);
}

TEST_CASE("tau derivatives") {
  const auto p = defaults();
  const auto f = comp_interference(p);
  SUBCASE("first derivative at zero") {
    const double expected = -1 / p.rho - 2 * std::numbers::pi * p.lambda_c * std::pow(p.R_D, 2 - p.alpha) / (p.alpha - 2);
    CHECK(rel_err(tau_derivatives(0.0, 1, f)[0], expected) <= 1e-10);
  }
  SUBCASE("finite differences and signs") {
    for (double mu : {1e8, 1e10, 3e11}) {
      const double h = 1e-4 * mu;
      const double fd = (tau(mu + h, f) - tau(mu - h, f)) / (2 * h);
      const auto d = tau_derivatives(mu, 3, f);
      CHECK(rel_err(d[0], fd) <= 1e-5);
      CHECK(d[0] < 0);
      CHECK(d[1] > 0);
      CHECK(d[2] < 0);
      const double fd2 = (tau_derivatives(mu + h, 1, f)[0] - tau_derivatives(mu - h, 1, f)[0]) / (2 * h);
      CHECK(rel_err(d[1], fd2) <= 1e-5);
    }
  }
  SUBCASE("no noise and no interferers") {
    InterferenceField empty{0.0, 0.0, p.R_D, p.alpha};
    for (double v : tau_derivatives(0.0, 6, empty)) CHECK(v == 0.0);
  }
}

TEST_CASE("Laplace derivatives") {
  const auto p = defaults();
  const auto f = comp_interference(p);
  CHECK(laplace_derivatives(0.0, 0, f)[0] == 1.0);
  for (double mu : {1e9, 1e10, 5e10}) {
    const auto L = laplace_derivatives(mu, 3, f);
    const auto t = tau_derivatives(mu, 3, f);
    CHECK(L[0] == doctest::Approx(std::exp(tau(mu, f))).epsilon(1e-14));
    CHECK(L[1] == doctest::Approx(t[0] * L[0]).epsilon(1e-14));
    CHECK(L[1] < 0);
    CHECK(L[2] > 0);
    CHECK(L[3] < 0);
    // step on the scale over which L varies
    const double h = 1e-3 / std::abs(t[0]);
    auto Lf = [&](double m) { return std::exp(tau(m, f)); };
    const double fd3 = (Lf(mu + 2 * h) - 2 * Lf(mu + h) + 2 * Lf(mu - h) - Lf(mu - 2 * h)) / (2 * h * h * h);
    CHECK(rel_err(L[3], fd3) <= 1e-4);
    const double fd2 = (Lf(mu + h) - 2 * Lf(mu) + Lf(mu - h)) / (h * h);
    CHECK(rel_err(L[2], fd2) <= 1e-4);
  }
}

TEST_CASE("scaled Laplace terms are Poisson probabilities") {
  const auto p = defaults();
  const auto f = comp_interference(p);
  for (double mu : {1e9, 1e10, 2e11}) {
    const auto a = scaled_laplace_terms(mu, 400, f);
    double sum = 0;
    for (double v : a) {
      CHECK(v >= 0);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    const auto L = laplace_derivatives(mu, 4, f);
    double fact = 1;
    for (int j = 0; j <= 4; ++j) {
      if (j) fact *= j;
      CHECK(rel_err(a[j], std::pow(-mu, j) * L[j] / fact) <= 1e-10);
    }
  }
}
