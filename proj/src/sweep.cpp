#include "nnoma/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "nnoma/errors.hpp"

namespace nnoma {

namespace {

double parse_field(std::string_view s, const std::string& text) {
  double v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size())
    throw ConfigError("malformed sweep '" + text + "': bad number '" + std::string(s) + "'");
  return v;
}

bool within(double delta, double reference, double abs_tol, double rel_tol, double* tolerance) {
  *tolerance = std::max(abs_tol, rel_tol * std::abs(reference));
  return std::abs(delta) <= *tolerance;
}

}  // namespace

const std::vector<std::string>& sweepable_params() {
  static const std::vector<std::string> names = {"lambda_c", "beta0_sq", "R0_bpcu", "Ri_bpcu", "P_s_dbm", "K"};
  return names;
}

std::vector<double> GridSpec::values() const {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    v[i] = log ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
  }
  // pin endpoints exactly
  v.front() = lo;
  v.back() = hi;
  return v;
}

GridSpec parse_grid(std::string_view text) {
  const std::string t(text);
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ConfigError("malformed sweep '" + t + "': expected NAME=LO:HI:COUNT[:log]");
  GridSpec g;
  g.name = std::string(text.substr(0, eq));
  const auto& ok = sweepable_params();
  if (std::find(ok.begin(), ok.end(), g.name) == ok.end())
    throw ConfigError("parameter cannot be swept: " + g.name);

  std::vector<std::string_view> parts;
  std::string_view rest = text.substr(eq + 1);
  while (true) {
    const auto c = rest.find(':');
    parts.push_back(rest.substr(0, c));
    if (c == std::string_view::npos) break;
    rest = rest.substr(c + 1);
  }
  if (parts.size() < 3 || parts.size() > 4) throw ConfigError("malformed sweep '" + t + "': expected LO:HI:COUNT[:log]");
  g.lo = parse_field(parts[0], t);
  g.hi = parse_field(parts[1], t);
  const double count = parse_field(parts[2], t);
  if (count != std::floor(count)) throw ConfigError("malformed sweep '" + t + "': COUNT must be an integer");
  g.count = static_cast<int>(count);
  if (parts.size() == 4) {
    if (parts[3] == "log") g.log = true;
    else if (parts[3] != "lin") throw ConfigError("malformed sweep '" + t + "': scale must be log or lin");
  }
  if (g.count < 2) throw ValidationError("sweep grid count must be at least 2");
  if (g.lo == g.hi) throw ValidationError("sweep grid endpoints must differ");
  if (g.log && !(g.lo > 0 && g.hi > 0)) throw ValidationError("log grid endpoints must be positive");
  return g;
}

SweepRecord run_point(const RunConfig& base, const std::string& param, double value, std::uint64_t index,
                      Modes modes, unsigned mc_workers) {
  const auto start = std::chrono::steady_clock::now();
  SweepRecord r;
  r.index = index;
  r.param = param;
  r.value = value;
  try {
    const SystemParams p = with_param(base.params, param, value);
    if (wants_analytic(modes)) {
      const auto a = analyze(p, base.accuracy);
      r.p0 = a.p0;
      r.pi = a.pi;
      r.p0_raw = a.p0_raw;
      r.pi_raw = a.pi_raw;
      r.p0_oma = a.p0_oma;
      r.sum_rate_nnoma = a.sum_rate_nnoma;
      r.sum_rate_oma = a.sum_rate_oma;
      r.M_A = a.M_A;
      r.poisson_tail = a.poisson_tail;
      r.series_remainder = a.series_remainder;
      r.cancellation = a.cancellation;
      r.quad_error = a.quad_error;
      r.clamp_overshoot = a.clamp_overshoot;
    }
    if (wants_mc(modes)) {
      const double w = effective_window(base.mc, p);
      const auto m = estimate_outage(p, base.mc.trials, base.mc.seed + index, w, mc_workers);
      r.p0_hat = m.p0_hat;
      r.p0_ci95 = m.p0_ci95;
      if (m.pi_hat) {
        r.pi_hat = *m.pi_hat;
        r.pi_ci95 = m.pi_ci95;
      }
      r.trials = m.trials;
      r.coop_trials = m.coop_trials;
      r.seed = m.seed;
      r.window = m.window;
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
  const auto values = spec.grid.values();
  std::vector<SweepRecord> out(values.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned pool_size = std::min<unsigned>(hw, static_cast<unsigned>(values.size()));
  // one level of parallelism at a time
  const unsigned mc_workers = spec.base.mc.workers ? spec.base.mc.workers : (pool_size > 1 ? 1 : hw);

  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < pool_size; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < values.size(); i = next++)
          out[i] = run_point(spec.base, spec.grid.name, values[i], i, spec.modes, mc_workers);
      });
    }
  }
  return out;
}

ValidationReport validate(const SystemParams& p, const AnalyticAccuracy& acc, const McSettings& mc,
                          const ValidationTolerances& tol) {
  ValidationReport r;
  const double w = effective_window(mc, p);
  r.analytic = analyze(p, acc);
  r.mc = estimate_outage(p, mc.trials, mc.seed, w, mc.workers);
  r.mc_doubled = estimate_outage(p, mc.trials, mc.seed, 2.0 * w, mc.workers);

  r.p0_delta = r.analytic.p0 - r.mc.p0_hat;
  r.p0_pass = within(r.p0_delta, r.analytic.p0, tol.p0_abs, tol.p0_rel, &r.p0_tolerance);
  r.p0_ci_covers = std::abs(r.p0_delta) <= r.mc.p0_ci95;

  if (r.mc.pi_hat) {
    r.pi_delta = r.analytic.pi - *r.mc.pi_hat;
    r.pi_pass = within(*r.pi_delta, r.analytic.pi, tol.pi_abs, tol.pi_rel, &r.pi_tolerance);
    r.pi_ci_covers = std::abs(*r.pi_delta) <= r.mc.pi_ci95;
  }

  // coupled realizations: only BSs beyond the base window differ
  r.window_shift_p0 = std::abs(r.mc_doubled.p0_hat - r.mc.p0_hat);
  r.window_bound_p0 = r.mc.p0_ci95;
  bool window_ok = r.window_shift_p0 <= r.window_bound_p0;
  if (r.mc.pi_hat && r.mc_doubled.pi_hat) {
    r.window_shift_pi = std::abs(*r.mc_doubled.pi_hat - *r.mc.pi_hat);
    r.window_bound_pi = r.mc.pi_ci95;
    window_ok = window_ok && r.window_shift_pi <= r.window_bound_pi;
  }
  r.window_pass = window_ok;
  r.pass = r.p0_pass && r.pi_pass && r.window_pass;
  return r;
}

std::string describe(const ValidationReport& r) {
  std::ostringstream os;
  os.precision(6);
  os << "P0  analytic=" << r.analytic.p0 << " mc=" << r.mc.p0_hat << " +-" << r.mc.p0_ci95 << " delta=" << r.p0_delta
     << " tol=" << r.p0_tolerance << " ci_covers=" << r.p0_ci_covers << (r.p0_pass ? " PASS" : " FAIL") << "\n";
  if (r.pi_delta) {
    os << "Pi  analytic=" << r.analytic.pi << " mc=" << *r.mc.pi_hat << " +-" << r.mc.pi_ci95
       << " delta=" << *r.pi_delta << " tol=" << r.pi_tolerance << " ci_covers=" << r.pi_ci_covers
       << (r.pi_pass ? " PASS" : " FAIL") << "\n";
  } else {
    os << "Pi  skipped: " << r.mc.pi_undefined_reason << "\n";
  }
  os << "window " << r.mc.window << " -> " << r.mc_doubled.window << " shift_p0=" << r.window_shift_p0
     << " (bound " << r.window_bound_p0 << ") shift_pi=" << r.window_shift_pi << " (bound " << r.window_bound_pi << ")"
     << (r.window_pass ? " PASS" : " FAIL: truncation window inadequate") << "\n";
  os << "diagnostics M_A=" << r.analytic.M_A << " poisson_tail=" << r.analytic.poisson_tail
     << " series_remainder=" << r.analytic.series_remainder << " cancellation=" << r.analytic.cancellation << " quad_error=" << r.analytic.quad_error << "\n";
  os << (r.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace nnoma
