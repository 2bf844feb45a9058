#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nnoma {

/// One evaluated grid point. Optional fields are empty when the mode that
/// produces them was not run or the point failed.
struct SweepRecord {
  std::uint64_t index = 0;
  std::string param;
  double value = 0;

  std::optional<double> p0, pi, p0_raw, pi_raw, p0_oma, sum_rate_nnoma, sum_rate_oma;
  std::optional<std::int64_t> M_A;
  std::optional<double> poisson_tail, series_remainder, cancellation, quad_error, clamp_overshoot;

  std::optional<double> p0_hat, p0_ci95, pi_hat, pi_ci95;
  std::optional<std::uint64_t> trials, coop_trials, seed;
  std::optional<double> window;

  double wall_time_s = 0;
  std::string error;

  bool operator==(const SweepRecord&) const = default;
};

/// Calls f(name, member) for every field, in column order.
template <class Record, class F>
void for_each_field(Record& r, F&& f) {
  f("index", r.index);
  f("param", r.param);
  f("value", r.value);
  f("p0", r.p0);
  f("pi", r.pi);
  f("p0_raw", r.p0_raw);
  f("pi_raw", r.pi_raw);
  f("p0_oma", r.p0_oma);
  f("sum_rate_nnoma", r.sum_rate_nnoma);
  f("sum_rate_oma", r.sum_rate_oma);
  f("M_A", r.M_A);
  f("poisson_tail", r.poisson_tail);
  f("series_remainder", r.series_remainder);
  f("cancellation", r.cancellation);
  f("quad_error", r.quad_error);
  f("clamp_overshoot", r.clamp_overshoot);
  f("p0_hat", r.p0_hat);
  f("p0_ci95", r.p0_ci95);
  f("pi_hat", r.pi_hat);
  f("pi_ci95", r.pi_ci95);
  f("trials", r.trials);
  f("coop_trials", r.coop_trials);
  f("seed", r.seed);
  f("window", r.window);
  f("wall_time_s", r.wall_time_s);
  f("error", r.error);
}

std::vector<std::string> record_columns();

enum class Format { csv, json };
Format parse_format(std::string_view text);

/// Shortest round-trip text for every number; empty cells / null for absent values.
std::string to_csv(const std::vector<SweepRecord>& records);
std::string to_json(const std::vector<SweepRecord>& records);

/// Inverse of to_csv(). Throws ConfigError on a malformed table.
std::vector<SweepRecord> parse_csv(std::string_view text);

/// Writes records to `path`. Throws std::invalid_argument for an empty set and
/// std::runtime_error for an unwritable path.
void emit(const std::vector<SweepRecord>& records, Format format, const std::string& path);

}  // namespace nnoma
