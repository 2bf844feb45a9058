// nnoma: analytic and Monte-Carlo outage of network-NOMA in downlink CoMP.
#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "nnoma/config.hpp"
#include "nnoma/errors.hpp"
#include "nnoma/sweep.hpp"

namespace {

struct Options {
  std::string config, sweep, out, format = "csv";
  std::optional<std::uint64_t> trials, seed;
  std::optional<double> window;
  std::optional<int> n, ma, ka;
};

std::string error_kind(const std::exception& e) {
  using namespace nnoma;
  if (dynamic_cast<const ConfigError*>(&e)) return "config";
  if (dynamic_cast<const ValidationError*>(&e)) return "validation";
  if (dynamic_cast<const ComplexityError*>(&e)) return "complexity";
  if (dynamic_cast<const NumericalError*>(&e)) return "numerical";
  if (dynamic_cast<const GeometryError*>(&e)) return "geometry";
  return "runtime";
}

void fail_line(const std::string& kind, const std::string& message) {
  std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << "\n";
}

nnoma::RunConfig load(const Options& o) {
  nnoma::RunConfig cfg = o.config.empty() ? nnoma::parse_config_text("") : nnoma::parse_config(o.config);
  if (o.trials) cfg.mc.trials = *o.trials;
  if (o.seed) cfg.mc.seed = *o.seed;
  if (o.window) cfg.mc.window = *o.window;
  if (o.n) cfg.accuracy.N = *o.n;
  if (o.ma) cfg.accuracy.M_A = *o.ma;
  if (o.ka) cfg.accuracy.K_A = *o.ka;
  if (!o.sweep.empty()) cfg.sweep = o.sweep;
  cfg.accuracy.validate();
  if (cfg.mc.trials == 0) throw nnoma::ValidationError("trials must be >= 1");
  return cfg;
}

void write(const std::vector<nnoma::SweepRecord>& records, const Options& o) {
  const auto fmt = nnoma::parse_format(o.format);
  if (o.out.empty()) {
    std::cout << (fmt == nnoma::Format::csv ? nnoma::to_csv(records) : nnoma::to_json(records));
  } else {
    nnoma::emit(records, fmt, o.out);
  }
}

// Single point, or the configured grid when one is given.
// Modes default to the configured ones (the sweep verb).
int run_records(const Options& o, std::optional<nnoma::Modes> forced) {
  const auto cfg = load(o);
  const auto modes = forced.value_or(cfg.modes);
  std::vector<nnoma::SweepRecord> records;
  if (cfg.sweep.empty()) {
    if (!forced) throw nnoma::ConfigError("sweep needs --sweep or a sweep= key");
    records.push_back(
        nnoma::run_point(cfg, "lambda_c", cfg.params.lambda_c, 0, modes, cfg.mc.workers));
  } else {
    records = nnoma::run_sweep({cfg, nnoma::parse_grid(cfg.sweep), modes});
  }
  write(records, o);
  int failed = 0;
  for (const auto& r : records) failed += !r.error.empty();
  if (failed) {
    fail_line("point", std::to_string(failed) + " grid point(s) failed; see the error column");
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outage analysis and simulation for network-NOMA CoMP"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config, "flat key=value configuration file");
    cmd->add_option("--trials", o.trials, "Monte-Carlo trials");
    cmd->add_option("--seed", o.seed, "root seed");
    cmd->add_option("--window", o.window, "interference window radius, m");
    cmd->add_option("--n", o.n, "Chebyshev terms N");
    cmd->add_option("--ma", o.ma, "Poisson-count truncation M_A (0 = auto)");
    cmd->add_option("--ka", o.ka, "incomplete-gamma terms K_A");
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--sweep", o.sweep, "NAME=LO:HI:COUNT[:log]");
    cmd->add_option("--out", o.out, "output path (stdout when omitted)");
    cmd->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* analyze = app.add_subcommand("analyze", "analytic outage only");
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo only");
  auto* sweep = app.add_subcommand("sweep", "parameter grid in the configured modes");
  auto* validate = app.add_subcommand("validate", "analytic vs Monte-Carlo comparison");
  for (auto* c : {analyze, simulate, sweep, validate}) add_common(c);
  for (auto* c : {analyze, simulate, sweep}) add_output(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail_line("usage", e.what());
    return 2;
  }

  try {
    if (*analyze) return run_records(o, nnoma::Modes::analytic);
    if (*simulate) return run_records(o, nnoma::Modes::mc);
    if (*sweep) return run_records(o, std::nullopt);
    const auto cfg = load(o);
    const auto report = nnoma::validate(cfg.params, cfg.accuracy, cfg.mc);
    std::cout << nnoma::describe(report);
    if (!report.pass) {
      fail_line("validation_failed", report.window_pass ? "analytic and simulated outage disagree"
                                                        : "truncation window inadequate");
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    fail_line(error_kind(e), e.what());
    return 1;
  }
}
