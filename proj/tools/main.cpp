// dmhd: run damped-MHD scenarios and inspect their artifacts.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dmhd/checkpoint.hpp"
#include "dmhd/config.hpp"
#include "dmhd/diophantine.hpp"
#include "dmhd/record_io.hpp"
#include "dmhd/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInvariant = 2;

int run_command(const std::string& config_path, const dmhd::ConfigOverrides& overrides) {
  dmhd::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = dmhd::load_config(config_path);
    dmhd::apply_overrides(cfg, overrides);
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    const dmhd::RunResult result = dmhd::run_to_files(cfg, std::cout);
    return result.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

int scan_command(const std::string& omega_text, double r, int K, bool sweep) {
  dmhd::Vec3 omega;
  try {
    omega = dmhd::OmegaSpec::parse(omega_text).resolve();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  std::cout << "K,c_empirical,witness_kx,witness_ky,witness_kz\n";
  std::cout.precision(17);
  for (int k = sweep ? 1 : K; k <= K; ++k) {
    const auto scan = dmhd::check_condition(omega, r, k);
    std::cout << k << ',' << scan.c_empirical << ',' << scan.witness.x << ',' << scan.witness.y
              << ',' << scan.witness.z << '\n';
  }
  return kExitOk;
}

int check_command(const std::string& path, const std::string& scenario) {
  try {
    const auto records = dmhd::read_ndjson(path);
    if (records.empty()) throw std::runtime_error("no records in " + path);
    const auto checks = dmhd::evaluate_checks(records, dmhd::parse_scenario(scenario));
    std::cout << records.size() << " records, t in [" << records.front().t << ", "
              << records.back().t << "]\n";
    std::cout << dmhd::summary_line(checks, false) << '\n';
    for (const auto& c : checks) {
      if (!c.passed) return kExitInvariant;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

int checkpoint_info(const std::string& path) {
  try {
    const auto h = dmhd::read_checkpoint_header(path);
    std::cout.precision(17);
    std::cout << "version " << h.version << "\nn " << h.n << "\nr " << h.r << "\nomega "
              << h.omega[0] << ',' << h.omega[1] << ',' << h.omega[2] << "\nt " << h.t << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral damped compressible MHD on the 3-torus"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "integrate a scenario and write diagnostics");
  std::string config_path;
  dmhd::ConfigOverrides ov;
  run->add_option("config", config_path, "configuration file (defaults used when omitted)");
  run->add_option("--n", ov.n, "modes per axis");
  run->add_option("--t-final", ov.t_final, "final time");
  run->add_option("--scenario", ov.scenario,
                  "nonlinear | linearized | euler-damping | single-mode-acoustic");
  run->add_option("--seed", ov.seed, "random seed for the initial data");
  run->add_option("--out", ov.out, "NDJSON output path");
  run->add_option("--checkpoint-every", ov.checkpoint_every, "samples between checkpoints");
  run->add_option("--omega", ov.omega, "background field: x,y,z or default-scaled:<scale>");
  run->add_option("--r", ov.r, "Diophantine exponent");

  auto* dio = app.add_subcommand("diophantine", "Diophantine condition tools");
  dio->require_subcommand(1);
  auto* scan = dio->add_subcommand("scan", "exhaustive lattice scan, CSV on stdout");
  std::string omega_text = "default-scaled:1";
  double r = 3.0;
  int K = 30;
  bool sweep = false;
  scan->add_option("--omega", omega_text, "x,y,z or default-scaled:<scale>");
  scan->add_option("--r", r, "exponent r > 2");
  scan->add_option("--K", K, "lattice radius")->check(CLI::PositiveNumber);
  scan->add_flag("--sweep", sweep, "one row for every radius 1..K");

  auto* check = app.add_subcommand("check", "re-run the invariant suite on an NDJSON file");
  std::string ndjson_path;
  std::string scenario = "nonlinear";
  check->add_option("file", ndjson_path, "diagnostics NDJSON")->required();
  check->add_option("--scenario", scenario, "scenario that produced the file");

  auto* ck = app.add_subcommand("checkpoint", "checkpoint tools");
  ck->require_subcommand(1);
  auto* info = ck->add_subcommand("info", "print a checkpoint header");
  std::string ck_path;
  info->add_option("file", ck_path, "checkpoint file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  if (*run) return run_command(config_path, ov);
  if (*scan) {
    if (!(r > 2.0)) {
      std::cerr << "error: r must exceed 2\n";
      return kExitConfig;
    }
    return scan_command(omega_text, r, K, sweep);
  }
  if (*check) return check_command(ndjson_path, scenario);
  if (*info) return checkpoint_info(ck_path);
  return kExitConfig;
}
