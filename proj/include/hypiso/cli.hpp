#pragma once

// Command implementations behind the `hypiso` executable. Each command
// returns its machine-readable output and a short human summary; the caller
// decides where they go.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypiso/density.hpp"
#include "hypiso/grid.hpp"
#include "hypiso/quadrature.hpp"

namespace hypiso::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitNumerical = 3;

struct RunConfig {
  int n = 2;
  Regime regime = Regime::CoshSquared;
  std::string density = "const 1";
  std::vector<std::string> candidates;
  std::optional<GridSpec> grid;
  QuadratureSpec quadrature;
  std::string out;
  std::uint64_t seed = 42;
  int threads = 0;  ///< 0 = hardware concurrency
  bool corrupt_slice = false;
};

/// Applies one `key=value` setting. Values may be wrapped in double quotes.
/// `candidate` accumulates. Throws ParseError on unknown keys or bad values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Reads a flat key=value config file; '#' starts a comment. Throws ParseError.
RunConfig load_config_file(const std::string& path);

/// Candidates used when a command that needs them is given none.
std::vector<std::string> default_candidates();

struct CommandOutput {
  int exit_code = kExitOk;
  std::string machine;  ///< CSV or JSON document
  std::string summary;  ///< human-readable lines
};

/// CSV "R,vol_g,per_f,log_vol_g,log_per_f,H" over the grid (default 0.25:4:16).
CommandOutput cmd_profile(const RunConfig& config);
/// JSON array of {candidate, vol_g, per_f, centered_R, centered_per_f, deficit}.
CommandOutput cmd_compare(const RunConfig& config);
/// JSON object of check reports per candidate; exit 1 if any check fails.
CommandOutput cmd_check(const RunConfig& config);
/// JSON log-convexity report for the density, its ball pullback and the
/// equivalent ball density.
CommandOutput cmd_density(const RunConfig& config);

/// Runs a command by name, mapping exceptions to exit codes (2 for parse and
/// domain errors, 3 for numerical nonconvergence), writing the machine output
/// to config.out (or returning it in `machine` when out is empty).
CommandOutput run_command(const std::string& name, const RunConfig& config);

}  // namespace hypiso::cli
