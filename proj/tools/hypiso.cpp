// hypiso: weighted isoperimetric lab for hyperbolic space with radial densities.
//
//   hypiso profile --n 2 --density "const 1" --grid 0.5:4:8 --out profile.csv
//   hypiso compare --regime theorem --candidate "offset 0.5 1" --out compare.json
//   hypiso check   --n 3 --density "exp_quadratic 0.25" --out checks.json
//   hypiso density --density "exp_linear 1"

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "hypiso/cli.hpp"
#include "hypiso/errors.hpp"

int main(int argc, char** argv) {
  using namespace hypiso::cli;

  CLI::App app{"Weighted isoperimetric lab for hyperbolic space with radial densities"};
  app.require_subcommand(1);

  std::string config_path;
  std::string n, regime, density, grid, out, seed, rel_tol, abs_tol, threads;
  std::vector<std::string> candidates;
  bool corrupt_slice = false;

  const std::pair<const char*, const char*> commands[] = {
      {"profile", "centered-ball volume, perimeter and mean curvature (CSV)"},
      {"compare", "candidate regions against the centered ball of equal volume (JSON)"},
      {"check", "slice inequality suite on candidate regions (JSON)"},
      {"density", "log-convexity report for the density (JSON)"}};
  for (const auto& [name, description] : commands) {
    auto* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "flat key=value config file; flags override it");
    sub->add_option("--n", n, "ambient dimension (>= 2)");
    sub->add_option("--regime", regime, "theorem | equal");
    sub->add_option("--density", density, "\"const c\" | \"exp_linear a\" | \"exp_quadratic a\" | \"log_poly c0 ...\"");
    sub->add_option("--candidate", candidates, "candidate region spec (repeatable)");
    sub->add_option("--grid", grid, "<min>:<max>:<count>[:log]");
    sub->add_option("--out", out, "machine output path");
    sub->add_option("--seed", seed, "seed (default 42)");
    sub->add_option("--rel-tol", rel_tol, "quadrature relative tolerance");
    sub->add_option("--abs-tol", abs_tol, "quadrature absolute tolerance");
    sub->add_option("--threads", threads, "worker threads (0 = all cores)");
    sub->add_flag("--corrupt-slice", corrupt_slice)->group("");  // hidden test hook
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParseError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig config;
  try {
    if (!config_path.empty()) config = load_config_file(config_path);
    const std::pair<const char*, const std::string*> overrides[] = {
        {"n", &n},         {"regime", &regime},   {"density", &density}, {"grid", &grid},
        {"out", &out},     {"seed", &seed},       {"rel_tol", &rel_tol}, {"abs_tol", &abs_tol},
        {"threads", &threads}};
    for (const auto& [key, value] : overrides)
      if (!value->empty()) apply_setting(config, key, *value);
    if (!candidates.empty()) {
      config.candidates.clear();
      for (const auto& c : candidates) apply_setting(config, "candidate", c);
    }
    config.corrupt_slice = corrupt_slice;
  } catch (const hypiso::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  }

  const CommandOutput result = run_command(command, config);
  std::cout << result.machine;
  // Machine output owns stdout when no --out path is given.
  const bool to_stdout = !config.out.empty() && (result.exit_code == kExitOk || result.exit_code == kExitCheckFailed);
  (to_stdout ? std::cout : std::cerr) << result.summary;
  return result.exit_code;
}
