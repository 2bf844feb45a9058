#include "nnoma/params.hpp"

#include <cmath>
#include <numbers>

#include "nnoma/errors.hpp"

namespace nnoma {

namespace {

double require(const RawParams& raw, const std::string& key) {
  auto it = raw.find(key);
  if (it == raw.end()) throw ConfigError("missing key: " + key);
  if (!std::isfinite(it->second)) throw ValidationError(key + " must be finite");
  return it->second;
}

void check(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace

const std::vector<std::string>& raw_param_names() {
  static const std::vector<std::string> names = {
      "lambda_c", "K",        "R_c",       "R_bar",   "R_D",     "alpha",   "f_c",
      "P_s_dbm",  "noise_dbm_per_hz", "bandwidth_hz", "beta0_sq", "beta1_sq", "R0_bpcu", "Ri_bpcu"};
  return names;
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

SystemParams build_params(const RawParams& raw) {
  const auto& names = raw_param_names();
  for (const auto& [key, value] : raw) {
    bool known = false;
    for (const auto& n : names) known = known || n == key;
    if (!known) throw ConfigError("unknown key: " + key);
  }

  SystemParams p;
  p.lambda_c = require(raw, "lambda_c");
  const double K = require(raw, "K");
  p.R_c = require(raw, "R_c");
  p.R_bar = require(raw, "R_bar");
  p.R_D = require(raw, "R_D");
  p.alpha = require(raw, "alpha");
  p.f_c = require(raw, "f_c");
  p.P_s_dbm = require(raw, "P_s_dbm");
  p.noise_dbm_per_hz = require(raw, "noise_dbm_per_hz");
  p.bandwidth_hz = require(raw, "bandwidth_hz");
  p.beta0_sq = require(raw, "beta0_sq");
  p.beta1_sq = require(raw, "beta1_sq");
  p.R0_bpcu = require(raw, "R0_bpcu");
  p.Ri_bpcu = require(raw, "Ri_bpcu");

  check(p.lambda_c > 0, "lambda_c must be positive");
  check(K >= 1 && K == std::floor(K) && K <= 64, "K must be an integer in [1, 64]");
  p.K = static_cast<int>(K);
  check(p.R_c > 0, "R_c must be positive");
  check(p.R_bar > 0, "R_bar must be positive");
  check(p.R_bar < p.R_D, "R_bar must be smaller than R_D");
  check(p.alpha > 2, "alpha must exceed 2");
  check(p.f_c > 0, "f_c must be positive");
  check(p.bandwidth_hz > 0, "bandwidth_hz must be positive");
  check(p.beta0_sq >= 0 && p.beta0_sq <= 1 && p.beta1_sq >= 0 && p.beta1_sq <= 1,
        "beta coefficients must lie in [0, 1]");
  check(std::abs(p.beta0_sq + p.beta1_sq - 1.0) <= 1e-12, "beta coefficients must sum to 1");
  check(p.R0_bpcu > 0, "R0_bpcu must be positive");
  check(p.Ri_bpcu > 0, "Ri_bpcu must be positive");

  constexpr double pi = std::numbers::pi;
  p.eta = kSpeedOfLight * kSpeedOfLight / (16.0 * pi * pi * p.f_c * p.f_c);
  p.P_s_w = dbm_to_watt(p.P_s_dbm);
  p.sigma_sq_w = dbm_to_watt(p.noise_dbm_per_hz) * p.bandwidth_hz;
  p.rho = p.eta * p.P_s_w / p.sigma_sq_w;
  p.eps0 = std::exp2(p.R0_bpcu) - 1.0;
  p.epsi = std::exp2(p.Ri_bpcu) - 1.0;
  p.S_C = pi * (p.R_D * p.R_D - p.R_bar * p.R_bar);
  check(p.rho > 0 && std::isfinite(p.rho), "rho must be positive and finite");
  return p;
}

RawParams to_raw(const SystemParams& p) {
  return {{"lambda_c", p.lambda_c},
          {"K", static_cast<double>(p.K)},
          {"R_c", p.R_c},
          {"R_bar", p.R_bar},
          {"R_D", p.R_D},
          {"alpha", p.alpha},
          {"f_c", p.f_c},
          {"P_s_dbm", p.P_s_dbm},
          {"noise_dbm_per_hz", p.noise_dbm_per_hz},
          {"bandwidth_hz", p.bandwidth_hz},
          {"beta0_sq", p.beta0_sq},
          {"beta1_sq", p.beta1_sq},
          {"R0_bpcu", p.R0_bpcu},
          {"Ri_bpcu", p.Ri_bpcu}};
}

SystemParams with_param(const SystemParams& p, const std::string& name, double value) {
  RawParams raw = to_raw(p);
  if (raw.find(name) == raw.end()) throw ConfigError("unknown key: " + name);
  raw[name] = value;
  if (name == "beta0_sq") raw["beta1_sq"] = 1.0 - value;
  if (name == "beta1_sq") raw["beta0_sq"] = 1.0 - value;
  return build_params(raw);
}

bool sic_feasible(const SystemParams& p) { return p.beta0_sq > p.beta1_sq * p.eps0; }

SystemParams oma_params(const SystemParams& p) {
  RawParams raw = to_raw(p);
  raw["beta0_sq"] = 1.0;
  raw["beta1_sq"] = 0.0;
  return build_params(raw);
}

}  // namespace nnoma
