#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>

#include "nnoma/config.hpp"
#include "nnoma/mixture.hpp"
#include "nnoma/outage.hpp"
#include "nnoma/simulate.hpp"

using namespace nnoma;

namespace {

SystemParams with(std::initializer_list<std::pair<const char*, double>> kv) {
  auto raw = default_raw_params();
  for (const auto& [k, v] : kv) raw[k] = v;
  if (raw["beta0_sq"] + raw["beta1_sq"] != 1.0) raw["beta1_sq"] = 1.0 - raw["beta0_sq"];
  return build_params(raw);
}

// One cooperating BS on the x axis with K = 1 and hand-placed user.
NetworkRealization two_bs(double coop_r, double user_dx, double interferer_x, double interferer_y) {
  NetworkRealization net;
  net.x = {coop_r, interferer_x};
  net.y = {0.0, interferer_y};
  net.r2 = {coop_r * coop_r, interferer_x * interferer_x + interferer_y * interferer_y};
  net.gain_comp = {1.0, 1.0};
  net.gain_noma = {1.0, 1.0};
  net.cooperating = 1;
  net.K = 1;
  net.user_dx = {user_dx};
  net.user_dy = {0.0};
  net.user_gain = {1.0};
  net.tagged_bs = 0;
  return net;
}

}  // namespace

TEST_CASE("BS count in the window is Poisson with the area mean") {
  const auto p = with({});
  const double window = 5000;
  const double mean = p.lambda_c * std::numbers::pi * (window * window - p.R_bar * p.R_bar);
  CHECK(mean == doctest::Approx(785.1).epsilon(1e-4));
  const int draws = 10000;
  double sum = 0;
  for (int t = 0; t < draws; ++t) sum += sample_network(p, window, {7, static_cast<std::uint64_t>(t)}).size();
  CHECK(std::abs(sum / draws - mean) <= 3 * std::sqrt(mean / draws));
}

TEST_CASE("sampled geometry respects the exclusion disc and window") {
  const auto p = with({});
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto net = sample_network(p, 2000, {3, t});
    for (std::size_t i = 0; i < net.size(); ++i) {
      CHECK(net.r2[i] >= p.R_bar * p.R_bar);
      CHECK(net.r2[i] <= 2000.0 * 2000.0);
      CHECK((i < net.cooperating) == (net.r2[i] <= p.R_D * p.R_D));
      CHECK(net.gain_comp[i] > 0);
      CHECK(net.gain_noma[i] > 0);
    }
    CHECK(net.user_dx.size() == net.cooperating * 2);
    for (std::size_t u = 0; u < net.user_dx.size(); ++u)
      CHECK(std::hypot(net.user_dx[u], net.user_dy[u]) <= p.R_c);
    CHECK(net.tagged_bs.has_value() == (net.cooperating > 0));
  }
}

TEST_CASE("doubling the window extends the same realization") {
  const auto p = with({});
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto small = sample_network(p, 2500, {9, t});
    const auto large = sample_network(p, 5000, {9, t});
    std::vector<double> kept;
    for (std::size_t i = 0; i < large.size(); ++i)
      if (large.r2[i] <= 2500.0 * 2500.0) kept.push_back(large.r2[i]);
    CHECK(kept == small.r2);
    CHECK(small.user_dx == large.user_dx);
    CHECK(small.tagged_bs == large.tagged_bs);
  }
}

TEST_CASE("empty network at negligible density") {
  const auto p = with({{"lambda_c", 1e-15}});
  const auto net = sample_network(p, 5000, {1, 0});
  CHECK(net.size() == 0);
  CHECK(comp_sinr(net, p) == 0.0);
  CHECK_FALSE(noma_sinrs(net, p).has_value());
  const auto est = estimate_outage(p, 200, 1, 5000, 1);
  CHECK(est.p0_hat == 1.0);
  CHECK_FALSE(est.pi_hat.has_value());
  CHECK_FALSE(est.pi_undefined_reason.empty());
}

TEST_CASE("CoMP SINR: single BS at 300 m") {
  const auto p = with({});
  NetworkRealization net = two_bs(300, -10, 0, 600);
  net.x.resize(1);
  net.y.resize(1);
  net.r2.resize(1);
  net.gain_comp.resize(1);
  net.gain_noma.resize(1);
  const double G = std::pow(300.0, -4);
  CHECK(G == doctest::Approx(1.2346e-10).epsilon(1e-4));
  CHECK(1 / p.rho == doctest::Approx(7.028e-10).epsilon(1e-3));
  CHECK(comp_sinr(net, p) == doctest::Approx(0.8 * G / (0.2 * G + 1 / p.rho)).epsilon(1e-14));
  CHECK(comp_sinr(net, p) == doctest::Approx(0.1358).epsilon(1e-3));
}

TEST_CASE("CoMP SINR increases with any gain when beta1 is zero") {
  const auto p = oma_params(with({}));
  for (std::uint64_t t = 0; t < 20; ++t) {
    auto net = sample_network(p, 2000, {4, t});
    if (net.cooperating == 0) continue;
    const double base = comp_sinr(net, p);
    net.gain_comp[0] *= 1.5;
    CHECK(comp_sinr(net, p) > base);
  }
}

TEST_CASE("NOMA SINRs: two-BS hand case") {
  const auto p = with({{"K", 1}});
  const auto net = two_bs(300, -10, 0, 600);
  const auto s = noma_sinrs(net, p);
  REQUIRE(s.has_value());
  const double own = std::pow(10.0, -4);
  const double I = std::pow(290.0 * 290.0 + 600.0 * 600.0, -2);
  const double n = 1 / p.rho;
  CHECK(std::abs(s->sinr_i0 - 0.8 * own / (0.2 * own + I + n)) <= 1e-12 * s->sinr_i0);
  CHECK(std::abs(s->sinr_ii - 0.2 * own / (I + n)) <= 1e-12 * s->sinr_ii);
  CHECK(s->user == 0);
}

TEST_CASE("NOMA SINRs: denominators differ by the own-signal term") {
  const auto p = with({{"K", 3}});
  int checked = 0;
  for (std::uint64_t t = 0; t < 40; ++t) {
    const auto net = sample_network(p, 2000, {6, t});
    const auto s = noma_sinrs(net, p);
    if (!s) continue;
    ++checked;
    const double den5 = p.beta0_sq * s->own_gain / s->sinr_i0;
    const double den6 = p.beta1_sq * s->own_gain / s->sinr_ii;
    CHECK(den5 - den6 == doctest::Approx(p.beta1_sq * s->own_gain).epsilon(1e-9));
    // selection is the strongest cluster user
    const std::size_t i = *net.tagged_bs;
    for (int k = 0; k < net.K; ++k) {
      const std::size_t u = i * net.K + k;
      const double r2 = net.user_dx[u] * net.user_dx[u] + net.user_dy[u] * net.user_dy[u];
      const double z = net.user_gain[u] * std::pow(r2, -p.alpha / 2);
      CHECK(z <= s->own_gain);
      if (static_cast<std::size_t>(k) == s->user) CHECK(z == s->own_gain);
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("vanishing thresholds") {
  const auto p = with({{"R0_bpcu", 1e-12}, {"Ri_bpcu", 1e-12}});
  const auto est = estimate_outage(p, 5000, 2, 2000, 1);
  std::uint64_t empty = est.m_histogram.empty() ? 0 : est.m_histogram[0];
  CHECK(est.p0_hat == doctest::Approx(static_cast<double>(empty) / est.trials));
  REQUIRE(est.pi_hat.has_value());
  CHECK(*est.pi_hat == 0.0);
}

TEST_CASE("estimates are bit-identical for any worker count") {
  const auto p = with({});
  const auto a = estimate_outage(p, 3000, 77, 3000, 1);
  const auto b = estimate_outage(p, 3000, 77, 3000, 3);
  const auto c = estimate_outage(p, 3000, 77, 3000, 8);
  for (const auto* e : {&b, &c}) {
    CHECK(e->p0_hat == a.p0_hat);
    CHECK(e->pi_hat == a.pi_hat);
    CHECK(e->p0_ci95 == a.p0_ci95);
    CHECK(e->pi_ci95 == a.pi_ci95);
    CHECK(e->coop_trials == a.coop_trials);
    CHECK(e->m_histogram == a.m_histogram);
  }
  CHECK(estimate_outage(p, 3000, 78, 3000, 1).p0_hat != a.p0_hat);
}

TEST_CASE("confidence half-width") {
  CHECK(ci95_halfwidth(0.5, 10000) == doctest::Approx(1.96 * 0.005));
  CHECK(ci95_halfwidth(0.0, 100) == 0.0);
}

TEST_CASE("cooperating count histogram follows the Poisson law") {
  const auto p = with({});
  const std::uint64_t n = 100000;
  const auto est = estimate_outage(p, n, 21, 600, 0);
  // pool bins with expected count below 5
  std::vector<double> observed, expected;
  double obs_acc = 0, exp_acc = 0;
  const std::size_t top = std::max<std::size_t>(est.m_histogram.size(), 40);
  for (std::size_t m = 0; m < top; ++m) {
    obs_acc += m < est.m_histogram.size() ? est.m_histogram[m] : 0;
    exp_acc += n * poisson_count_pmf(static_cast<int>(m), p);
    if (exp_acc >= 5) {
      observed.push_back(obs_acc);
      expected.push_back(exp_acc);
      obs_acc = exp_acc = 0;
    }
  }
  observed.back() += obs_acc;
  expected.back() += exp_acc + n * poisson_count_tail(static_cast<int>(top) - 1, p);
  double chi2 = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) chi2 += std::pow(observed[i] - expected[i], 2) / expected[i];
  const boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  const double pvalue = boost::math::cdf(boost::math::complement(dist, chi2));
  CAPTURE(chi2);
  CHECK(pvalue > 0.001);

  const double empty = static_cast<double>(est.m_histogram[0]) / n;
  CHECK(std::abs(empty - 5.3e-4) <= 4 * std::sqrt(5.3e-4 / n));
}

TEST_CASE("sampled cooperating gains match the mixture cdf") {
  const auto p = with({});
  const auto mix = coop_gain_mixture(p, 10);
  std::vector<double> z;
  for (std::uint64_t t = 0; z.size() < 100000; ++t) {
    const auto net = sample_network(p, 600, {31, t});
    for (std::size_t i = 0; i < net.cooperating && z.size() < 100000; ++i)
      z.push_back(net.gain_comp[i] * std::pow(net.r2[i], -p.alpha / 2));
  }
  std::sort(z.begin(), z.end());
  double d = 0;
  const double n = static_cast<double>(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double f = mix.cdf(z[i]);
    d = std::max({d, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
  }
  CHECK(d <= 0.01);
}

TEST_CASE("argument checks") {
  const auto p = with({});
  CHECK_THROWS_AS(estimate_outage(p, 0, 1, 5000), std::invalid_argument);
  CHECK_THROWS_AS(sample_network(p, 400, {1, 0}), std::invalid_argument);
}
