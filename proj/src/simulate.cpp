#include "nnoma/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <thread>

#include "nnoma/kernels/shot_noise.hpp"

namespace nnoma {

namespace {

constexpr std::uint64_t kClusterStream = 0x636c7573746572ULL;  // after all ring streams

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double path_gain(double gain, double r2, double alpha) { return gain * std::pow(r2, -alpha / 2.0); }

struct Tally {
  std::uint64_t comp_outages = 0;
  std::uint64_t coop_trials = 0;
  std::uint64_t noma_outages = 0;
  std::vector<std::uint64_t> histogram;
};

Tally run_trials(const SystemParams& p, std::uint64_t begin, std::uint64_t end, std::uint64_t seed, double window) {
  Tally t;
  for (std::uint64_t trial = begin; trial < end; ++trial) {
    const auto net = sample_network(p, window, {seed, trial});
    const std::size_t m = net.cooperating;
    if (t.histogram.size() <= m) t.histogram.resize(m + 1, 0);
    ++t.histogram[m];
    if (comp_sinr(net, p) < p.eps0 || m == 0) ++t.comp_outages;
    if (const auto s = noma_sinrs(net, p)) {
      ++t.coop_trials;
      if (!(s->sinr_i0 > p.eps0 && s->sinr_ii > p.epsi)) ++t.noma_outages;
    }
  }
  return t;
}

}  // namespace

std::mt19937_64 make_stream(TrialStream s, std::uint64_t substream) {
  std::uint64_t h = splitmix64(s.seed);
  h = splitmix64(h ^ splitmix64(s.trial + 0x51ed2701ULL));
  h = splitmix64(h ^ splitmix64(substream + 0x2545f491ULL));
  return std::mt19937_64(h);
}

double default_window(const SystemParams& p) { return 10.0 * p.R_D; }

std::vector<double> sampling_rings(const SystemParams& p, double window) {
  if (!(window > p.R_D)) throw std::invalid_argument("window radius must exceed R_D");
  std::vector<double> edges{p.R_bar, p.R_D};
  for (int k = 1; edges.back() < window; ++k) edges.push_back(p.R_D * std::exp2(k / 4.0));
  return edges;
}

NetworkRealization sample_network(const SystemParams& p, double window, TrialStream stream) {
  const auto edges = sampling_rings(p, window);
  const double window2 = window * window;
  NetworkRealization net;
  net.K = p.K;
  for (std::size_t ring = 0; ring + 1 < edges.size(); ++ring) {
    const double inner2 = edges[ring] * edges[ring];
    const double outer2 = edges[ring + 1] * edges[ring + 1];
    const double mean = p.lambda_c * std::numbers::pi * (outer2 - inner2);
    if (mean > 0) {
      auto rng = make_stream(stream, ring);
      std::poisson_distribution<std::uint64_t> count(mean);
      std::uniform_real_distribution<double> radius2(inner2, outer2);
      std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
      std::exponential_distribution<double> fading(1.0);
      const std::uint64_t n = count(rng);
      for (std::uint64_t i = 0; i < n; ++i) {
        const double r2 = radius2(rng);
        const double phi = angle(rng);
        const double g = fading(rng);
        const double h = fading(rng);
        if (r2 > window2) continue;
        const double r = std::sqrt(r2);
        net.x.push_back(r * std::cos(phi));
        net.y.push_back(r * std::sin(phi));
        net.r2.push_back(r2);
        net.gain_comp.push_back(g);
        net.gain_noma.push_back(h);
      }
    }
    if (ring == 0) net.cooperating = net.x.size();
  }

  if (net.cooperating > 0) {
    auto rng = make_stream(stream, kClusterStream);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::exponential_distribution<double> fading(1.0);
    const std::size_t users = net.cooperating * static_cast<std::size_t>(p.K);
    net.user_dx.reserve(users);
    net.user_dy.reserve(users);
    net.user_gain.reserve(users);
    for (std::size_t u = 0; u < users; ++u) {
      const double r = p.R_c * std::sqrt(unit(rng));
      const double phi = angle(rng);
      net.user_dx.push_back(r * std::cos(phi));
      net.user_dy.push_back(r * std::sin(phi));
      net.user_gain.push_back(fading(rng));
    }
    std::uniform_int_distribution<std::size_t> pick(0, net.cooperating - 1);
    net.tagged_bs = pick(rng);
  }
  return net;
}

double comp_sinr(const NetworkRealization& net, const SystemParams& p) {
  const std::size_t m = net.cooperating;
  if (m == 0) return 0.0;
  const std::span<const double> r2(net.r2), g(net.gain_comp);
  const double signal = kernels::power_law_sum(r2.first(m), g.first(m), p.alpha);
  const double interference = kernels::power_law_sum(r2.subspan(m), g.subspan(m), p.alpha);
  return p.beta0_sq * signal / (p.beta1_sq * signal + interference + 1.0 / p.rho);
}

std::optional<NomaSinrs> noma_sinrs(const NetworkRealization& net, const SystemParams& p) {
  if (!net.tagged_bs) return std::nullopt;
  const std::size_t i = *net.tagged_bs;
  const std::size_t K = static_cast<std::size_t>(net.K);
  NomaSinrs out;
  double best = -1;
  for (std::size_t k = 0; k < K; ++k) {
    const std::size_t u = i * K + k;
    const double r2 = net.user_dx[u] * net.user_dx[u] + net.user_dy[u] * net.user_dy[u];
    const double z = path_gain(net.user_gain[u], r2, p.alpha);
    if (z > best) {
      best = z;
      out.user = k;
    }
  }
  out.own_gain = best;
  const std::size_t u = i * K + out.user;
  const double ux = net.x[i] + net.user_dx[u];
  const double uy = net.y[i] + net.user_dy[u];
  const std::span<const double> xs(net.x), ys(net.y), h(net.gain_noma);
  out.interference = kernels::shot_noise(xs.first(i), ys.first(i), h.first(i), ux, uy, p.alpha) +
                     kernels::shot_noise(xs.subspan(i + 1), ys.subspan(i + 1), h.subspan(i + 1), ux, uy, p.alpha);
  const double noise = 1.0 / p.rho;
  out.sinr_i0 = out.own_gain * p.beta0_sq / (out.own_gain * p.beta1_sq + out.interference + noise);
  out.sinr_ii = out.own_gain * p.beta1_sq / (out.interference + noise);
  return out;
}

double ci95_halfwidth(double p, std::uint64_t n) {
  if (n == 0) return 0.0;
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

MCEstimate estimate_outage(const SystemParams& p, std::uint64_t trials, std::uint64_t seed, double window,
                           unsigned workers) {
  if (trials == 0) throw std::invalid_argument("estimate_outage: trials must be >= 1");
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));

  std::vector<Tally> tallies(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = trials * w / workers;
      const std::uint64_t end = trials * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] { tallies[w] = run_trials(p, begin, end, seed, window); });
    }
  }

  MCEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.window = window;
  std::uint64_t comp_outages = 0, noma_outages = 0;
  for (const auto& t : tallies) {
    comp_outages += t.comp_outages;
    noma_outages += t.noma_outages;
    est.coop_trials += t.coop_trials;
    if (est.m_histogram.size() < t.histogram.size()) est.m_histogram.resize(t.histogram.size(), 0);
    for (std::size_t m = 0; m < t.histogram.size(); ++m) est.m_histogram[m] += t.histogram[m];
  }
  est.p0_hat = static_cast<double>(comp_outages) / static_cast<double>(trials);
  est.p0_ci95 = ci95_halfwidth(est.p0_hat, trials);
  if (est.coop_trials > 0) {
    est.pi_hat = static_cast<double>(noma_outages) / static_cast<double>(est.coop_trials);
    est.pi_ci95 = ci95_halfwidth(*est.pi_hat, est.coop_trials);
  } else {
    est.pi_undefined_reason = "no trial had a cooperating BS";
  }
  return est;
}

}  // namespace nnoma
