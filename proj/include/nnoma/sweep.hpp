#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nnoma/config.hpp"
#include "nnoma/records.hpp"
#include "nnoma/simulate.hpp"

namespace nnoma {

/// NAME=LO:HI:COUNT[:log]
struct GridSpec {
  std::string name;
  double lo = 0, hi = 0;
  int count = 0;
  bool log = false;

  std::vector<double> values() const;
};

/// Parameters a sweep may vary.
const std::vector<std::string>& sweepable_params();

/// Throws ConfigError on malformed text or an unsweepable name and
/// ValidationError for count < 2 or equal endpoints.
GridSpec parse_grid(std::string_view text);

struct SweepSpec {
  RunConfig base;
  GridSpec grid;
  Modes modes = Modes::both;
};

/// Evaluates one grid point. Errors are caught and stored in the record.
SweepRecord run_point(const RunConfig& base, const std::string& param, double value, std::uint64_t index,
                      Modes modes, unsigned mc_workers);

/// One record per grid point in grid order. Points run concurrently; the MC
/// seed of point i is base seed + i.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

struct ValidationTolerances {
  double p0_abs = 0.01, p0_rel = 0.10;
  double pi_abs = 0.02, pi_rel = 0.15;
};

struct ValidationReport {
  OutageReport analytic;
  MCEstimate mc;
  MCEstimate mc_doubled;  // same seed, window doubled

  double p0_delta = 0, p0_tolerance = 0;
  bool p0_pass = false, p0_ci_covers = false;

  std::optional<double> pi_delta;
  double pi_tolerance = 0;
  bool pi_pass = true, pi_ci_covers = true;

  // Shifts between the coupled windows against the CI half-width of the base run.
  double window_shift_p0 = 0, window_shift_pi = 0;
  double window_bound_p0 = 0, window_bound_pi = 0;
  bool window_pass = false;

  bool pass = false;
};

ValidationReport validate(const SystemParams& p, const AnalyticAccuracy& acc, const McSettings& mc,
                          const ValidationTolerances& tol = {});

/// Human-readable multi-line summary ending in PASS or FAIL.
std::string describe(const ValidationReport& r);

}  // namespace nnoma
