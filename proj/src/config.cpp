#include "nnoma/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "nnoma/errors.hpp"
#include "nnoma/simulate.hpp"

namespace nnoma {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size() || v.empty())
    throw ConfigError("unparsable value for " + std::string(key) + ": '" + std::string(v) + "'");
  return out;
}

template <class Int>
Int to_int(std::string_view key, std::string_view v) {
  Int out = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size() || v.empty())
    throw ConfigError("unparsable integer for " + std::string(key) + ": '" + std::string(v) + "'");
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ConfigError("unparsable boolean for " + std::string(key) + ": '" + std::string(v) + "'");
}

}  // namespace

std::string_view modes_name(Modes m) {
  switch (m) {
    case Modes::analytic: return "analytic";
    case Modes::mc: return "mc";
    case Modes::both: return "both";
  }
  return "both";
}

Modes parse_modes(std::string_view text) {
  if (text == "analytic") return Modes::analytic;
  if (text == "mc") return Modes::mc;
  if (text == "both") return Modes::both;
  throw ConfigError("unparsable value for modes: '" + std::string(text) + "'");
}

RawParams default_raw_params() {
  return {{"f_c", 2e9},          {"noise_dbm_per_hz", -170}, {"bandwidth_hz", 1e7}, {"alpha", 4},
          {"beta0_sq", 0.8},     {"beta1_sq", 0.2},          {"R_c", 30},           {"R_D", 500},
          {"R_bar", 100},        {"P_s_dbm", 30},            {"lambda_c", 1e-5},    {"K", 2},
          {"R0_bpcu", 0.5},      {"Ri_bpcu", 1.5}};
}

double effective_window(const McSettings& mc, const SystemParams& p) {
  return mc.window > 0 ? mc.window : default_window(p);
}

RunConfig parse_config_text(std::string_view text) {
  RunConfig cfg;
  RawParams raw = default_raw_params();
  std::set<std::string> seen;
  const auto& param_names = raw_param_names();

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError("duplicate key: " + key);

    if (std::find(param_names.begin(), param_names.end(), key) != param_names.end()) {
      raw[key] = to_double(key, value);
    } else if (key == "N") {
      cfg.accuracy.N = to_int<int>(key, value);
    } else if (key == "M_A") {
      cfg.accuracy.M_A = to_int<int>(key, value);
    } else if (key == "K_A") {
      cfg.accuracy.K_A = to_int<int>(key, value);
    } else if (key == "quad_points") {
      cfg.accuracy.quad_points = to_int<int>(key, value);
    } else if (key == "tail_closure") {
      cfg.accuracy.tail_closure = to_bool(key, value);
    } else if (key == "method") {
      if (value == "aggregated") cfg.accuracy.method = ConditionalMethod::aggregated;
      else if (value == "compositions") cfg.accuracy.method = ConditionalMethod::compositions;
      else throw ConfigError("unparsable value for method: '" + std::string(value) + "'");
    } else if (key == "max_compositions") {
      cfg.accuracy.max_compositions = to_double(key, value);
    } else if (key == "poisson_tail_bound") {
      cfg.accuracy.poisson_tail_bound = to_double(key, value);
    } else if (key == "trials") {
      cfg.mc.trials = to_int<std::uint64_t>(key, value);
    } else if (key == "seed") {
      cfg.mc.seed = to_int<std::uint64_t>(key, value);
    } else if (key == "window") {
      cfg.mc.window = to_double(key, value);
    } else if (key == "workers") {
      cfg.mc.workers = to_int<unsigned>(key, value);
    } else if (key == "sweep") {
      cfg.sweep = std::string(value);
    } else if (key == "modes") {
      cfg.modes = parse_modes(value);
    } else {
      throw ConfigError("unknown key: " + key);
    }
  }

  const bool b0 = seen.count("beta0_sq"), b1 = seen.count("beta1_sq");
  if (b0 && !b1) raw["beta1_sq"] = 1.0 - raw["beta0_sq"];
  if (b1 && !b0) raw["beta0_sq"] = 1.0 - raw["beta1_sq"];

  cfg.params = build_params(raw);
  cfg.accuracy.validate();
  if (cfg.mc.trials == 0) throw ValidationError("trials must be >= 1");
  if (cfg.mc.window != 0 && !(cfg.mc.window > cfg.params.R_D))
    throw ValidationError("window must exceed R_D");
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace nnoma
