#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "hypiso/cli.hpp"
#include "hypiso/errors.hpp"

using namespace hypiso;
using namespace hypiso::cli;

namespace {

struct Run {
  int exit_code;
  std::string out;
};

// Runs the CLI binary through the shell, capturing stdout.
Run run_cli(const std::string& args) {
  const std::string cmd = std::string(HYPISO_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, k);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hypiso_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(CliConfig, ApplySettings) {
  RunConfig c;
  apply_setting(c, "n", "3");
  apply_setting(c, "regime", "equal");
  apply_setting(c, "density", "\"exp_linear 0.5\"");
  apply_setting(c, "candidate", "centered 1");
  apply_setting(c, "candidate", "annulus 1 2");
  apply_setting(c, "grid", "0.5:2:4");
  apply_setting(c, "rel_tol", "1e-10");
  apply_setting(c, "threads", "2");
  EXPECT_EQ(c.n, 3);
  EXPECT_EQ(c.regime, Regime::Equal);
  EXPECT_EQ(c.density, "exp_linear 0.5");
  EXPECT_EQ(c.candidates.size(), 2u);
  ASSERT_TRUE(c.grid.has_value());
  EXPECT_EQ(c.grid->count, 4);
  EXPECT_EQ(c.quadrature.rel_tol, 1e-10);
  EXPECT_EQ(c.threads, 2);
  EXPECT_THROW(apply_setting(c, "colour", "red"), ParseError);
  EXPECT_THROW(apply_setting(c, "n", "1"), ParseError);
  EXPECT_THROW(apply_setting(c, "n", "2.5"), ParseError);
  EXPECT_THROW(apply_setting(c, "regime", "maybe"), ParseError);
  EXPECT_THROW(apply_setting(c, "rel_tol", "0"), ParseError);
}

TEST(CliConfig, LoadFile) {
  const auto path = temp_path("config.cfg");
  {
    std::ofstream f(path);
    f << "# lab settings\n\nn = 3\ndensity = \"exp_quadratic 0.25\"\ncandidate=offset 0.5 1\n";
  }
  const auto c = load_config_file(path.string());
  EXPECT_EQ(c.n, 3);
  EXPECT_EQ(c.density, "exp_quadratic 0.25");
  ASSERT_EQ(c.candidates.size(), 1u);
  EXPECT_EQ(c.candidates[0], "offset 0.5 1");
  {
    std::ofstream f(path);
    f << "n 3\n";
  }
  EXPECT_THROW(load_config_file(path.string()), ParseError);
  std::filesystem::remove(path);
  EXPECT_THROW(load_config_file(path.string()), ParseError);
}

TEST(CliCommands, ProfileCsv) {
  RunConfig c;
  c.grid = GridSpec{0.0, 1.0, 2, false};
  const auto out = run_command("profile", c);
  EXPECT_EQ(out.exit_code, kExitOk);
  std::istringstream in(out.machine);
  std::string header, row0, row1;
  std::getline(in, header);
  std::getline(in, row0);
  std::getline(in, row1);
  EXPECT_EQ(header, "R,vol_g,per_f,log_vol_g,log_per_f,H");
  EXPECT_EQ(row0, "0,0,0,-inf,-inf,inf");
  EXPECT_EQ(row1.substr(0, 4), "1,3.");
}

TEST(CliCommands, DefaultProfileGrid) {
  const auto out = run_command("profile", RunConfig{});
  EXPECT_EQ(std::count(out.machine.begin(), out.machine.end(), '\n'), 17);
}

TEST(CliCommands, CompareJson) {
  RunConfig c;
  c.candidates = {"offset 0 1", "annulus 1 2"};
  const auto out = run_command("compare", c);
  EXPECT_EQ(out.exit_code, kExitOk);
  const auto j = nlohmann::json::parse(out.machine);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_NEAR(j[0]["deficit"].get<double>(), 0.0, 1e-9);
  EXPECT_NEAR(j[1]["per_f"].get<double>(), 127.30016, 1e-5);
  EXPECT_GT(j[1]["deficit"].get<double>(), 0.0);
  for (const char* key : {"candidate", "vol_g", "per_f", "centered_R", "centered_per_f", "deficit"})
    EXPECT_TRUE(j[0].contains(key)) << key;
}

TEST(CliCommands, CheckJsonAndCorruption) {
  RunConfig c;
  const auto ok = run_command("check", c);
  EXPECT_EQ(ok.exit_code, kExitOk);
  const auto j = nlohmann::json::parse(ok.machine);
  EXPECT_EQ(j["all_passed"], true);
  EXPECT_EQ(j["results"].size(), default_candidates().size());
  for (const auto& cand : j["results"])
    for (const auto& chk : cand["checks"])
      if (chk["check_name"] == "check_spherical_isoperimetric") EXPECT_EQ(chk["status"], "skipped");

  c.corrupt_slice = true;
  const auto bad = run_command("check", c);
  EXPECT_EQ(bad.exit_code, kExitCheckFailed);
  EXPECT_EQ(nlohmann::json::parse(bad.machine)["all_passed"], false);
}

TEST(CliCommands, DensityReport) {
  RunConfig c;
  c.density = "exp_quadratic 1";
  const auto j = nlohmann::json::parse(run_command("density", c).machine);
  EXPECT_EQ(j["geodesic"]["classification"], "StrictlyLogConvex");
  EXPECT_EQ(j["composition_implication"], "true");
  c.density = "exp_quadratic -1";
  c.regime = Regime::Equal;
  const auto g = nlohmann::json::parse(run_command("density", c).machine);
  EXPECT_EQ(g["geodesic"]["classification"], "NotLogConvex");
  EXPECT_EQ(g["composition_implication"], "precondition_failed");
  EXPECT_EQ(g["equivalent_ball"], "not_applicable");
}

TEST(CliCommands, ErrorsMapToExitCodes) {
  RunConfig c;
  c.density = "cubic 2";
  EXPECT_EQ(run_command("profile", c).exit_code, kExitParseError);
  EXPECT_EQ(run_command("bogus", RunConfig{}).exit_code, kExitParseError);
  RunConfig tight;
  tight.quadrature = QuadratureSpec{1e-15, 1e-300, 1};
  tight.grid = GridSpec{1.0, 8.0, 3, false};
  tight.density = "exp_quadratic 1";
  EXPECT_EQ(run_command("profile", tight).exit_code, kExitNumerical);
}

TEST(CliBinary, ExitCodes) {
  EXPECT_EQ(run_cli("profile --grid 0.5:1:2").exit_code, 0);
  EXPECT_EQ(run_cli("profile --density 'nope 1'").exit_code, 2);
  EXPECT_EQ(run_cli("profile --grid 1:2").exit_code, 2);
  EXPECT_EQ(run_cli("profile --unknown-flag").exit_code, 2);
  EXPECT_EQ(run_cli("").exit_code, 2);
  EXPECT_EQ(run_cli("check --corrupt-slice").exit_code, 1);
  EXPECT_EQ(run_cli("check --n 3 --candidate 'offset 0.5 1'").exit_code, 0);
}

TEST(CliBinary, ProfileIsByteIdentical) {
  const std::string args = "profile --density 'exp_quadratic 0.25' --grid 0.1:5:40 --n 3";
  const auto a = run_cli(args + " --threads 1");
  const auto b = run_cli(args + " --threads 1");
  const auto c = run_cli(args + " --threads 8");
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_FALSE(a.out.empty());
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(CliBinary, OutFileAndConfigOverride) {
  const auto cfg = temp_path("run.cfg");
  const auto csv = temp_path("profile.csv");
  {
    std::ofstream f(cfg);
    f << "n = 3\ngrid = 0.5:1:2\nout = " << csv.string() << "\n";
  }
  const auto r = run_cli("profile --config " + cfg.string() + " --n 2");
  EXPECT_EQ(r.exit_code, 0);
  std::ifstream in(csv);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto direct = run_cli("profile --n 2 --grid 0.5:1:2");
  EXPECT_EQ(ss.str(), direct.out);
  std::filesystem::remove(cfg);
  std::filesystem::remove(csv);
}
