#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "nnoma/outage.hpp"
#include "nnoma/params.hpp"

namespace nnoma {

struct McSettings {
  std::uint64_t trials = 200000;
  std::uint64_t seed = 1;
  double window = 0;     // m; 0 selects default_window()
  unsigned workers = 0;  // 0 = hardware concurrency
};

enum class Modes { analytic, mc, both };

std::string_view modes_name(Modes m);
Modes parse_modes(std::string_view text);
inline bool wants_analytic(Modes m) { return m != Modes::mc; }
inline bool wants_mc(Modes m) { return m != Modes::analytic; }

struct RunConfig {
  SystemParams params;
  AnalyticAccuracy accuracy;
  McSettings mc;
  std::string sweep;  // grid text, empty when absent
  Modes modes = Modes::both;
};

/// Default raw block: the reference experiment set.
RawParams default_raw_params();

/// Flat key=value text, '#' starts a comment. Missing keys fall back to the
/// defaults; an unspecified beta is the complement of the specified one.
RunConfig parse_config_text(std::string_view text);

/// Reads and parses a file. Throws ConfigError if it cannot be opened.
RunConfig parse_config(const std::string& path);

/// Resolves McSettings::window == 0 to the default.
double effective_window(const McSettings& mc, const SystemParams& p);

}  // namespace nnoma
