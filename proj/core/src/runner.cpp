#include "dmhd/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "dmhd/checkpoint.hpp"
#include "dmhd/dynamics.hpp"
#include "dmhd/initial_data.hpp"
#include "dmhd/integrator.hpp"
#include "dmhd/record_io.hpp"

namespace dmhd {
namespace {

constexpr double kDivergenceTolerance = 1e-10;
constexpr double kMeanTolerance = 1e-12;
constexpr double kMomentumRelative = 1e-8;
constexpr double kLyapunovTolerance = 1e-8;
constexpr std::uint64_t kCalibrationSeed = 20240601;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

StepControl step_control(const RunConfig& cfg) {
  StepControl ctrl;
  ctrl.safety = cfg.safety;
  if (cfg.dt_max) ctrl.dt_max = *cfg.dt_max;
  ctrl.reproject_every = cfg.reproject_every;
  return ctrl;
}

RightHandSide make_rhs(const RunConfig& cfg, const Vec3& omega, const PressureLaw& pl) {
  switch (cfg.scenario) {
    case Scenario::linearized:
    case Scenario::single_mode_acoustic:
      return [omega, beta = pl.beta()](const State& s) { return linearized_rhs(s, omega, beta); };
    case Scenario::nonlinear:
    case Scenario::euler_damping:
      break;
  }
  return [omega, pl](const State& s) { return nonlinear_rhs(s, omega, pl); };
}

// Calibration draws a thousand random states; runs in one process that share
// (n, ω, r, samples, weight) reuse the answer.
double calibrated_A(const Grid& grid, const Vec3& omega, const RunConfig& cfg) {
  using Key = std::tuple<int, Vec3, double, int, double>;
  static std::map<Key, double> cache;
  static std::mutex mutex;
  const Key key{grid.n(), omega, cfg.r, cfg.calibration_samples, cfg.density_weight};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double A = calibrate_lyapunov_A(grid, omega, cfg.r, cfg.calibration_samples,
                                        kCalibrationSeed, cfg.density_weight);
  std::lock_guard lock(mutex);
  cache.emplace(key, A);
  return A;
}

std::filesystem::path checkpoint_path(const std::string& dir, long sample) {
  char name[48];
  std::snprintf(name, sizeof name, "checkpoint_%06ld.mhdt", sample);
  return std::filesystem::path(dir) / name;
}

}  // namespace

std::vector<CheckResult> evaluate_checks(const std::vector<DiagnosticsRecord>& records,
                                         Scenario scenario) {
  std::vector<CheckResult> out;
  if (records.empty()) return out;

  // ‖b‖₁ is the recorded order-1 norm when present, else computed from order 0.
  const auto& orders = records.front().orders;
  const auto one = std::find(orders.begin(), orders.end(), 1.0);
  double div_ratio = 0.0;
  for (const auto& rec : records) {
    const double nb = one != orders.end() ? rec.norm_b[one - orders.begin()] : rec.norm_b.front();
    if (nb > 0.0) div_ratio = std::max(div_ratio, rec.div_b_norm / nb);
  }
  out.push_back({"divergence", div_ratio <= kDivergenceTolerance, "max |div b|/|b|_1 = " + sci(div_ratio)});

  if (records.size() >= 2) {
    const MeanLawReport means = mean_laws_check(records, kMeanTolerance);
    out.push_back({"means", means.means_constant,
                   "drift a = " + sci(means.max_drift_mean_a) + ", b = " + sci(means.max_drift_mean_b)});
    if (scenario == Scenario::nonlinear || scenario == Scenario::euler_damping) {
      const double tol = means.momentum_relative ? kMomentumRelative : kMeanTolerance;
      out.push_back({"momentum", means.momentum_deviation <= tol,
                     std::string(means.momentum_relative ? "relative" : "absolute") +
                         " deviation from e^-t law = " + sci(means.momentum_deviation)});
    }
  }

  if (scenario == Scenario::linearized) {
    double worst = 0.0;
    for (std::size_t i = 1; i < records.size(); ++i) {
      const double prev = records[i - 1].lyapunov_E;
      const double rise = (records[i].lyapunov_E - prev) / std::max(prev, 1e-300);
      worst = std::max(worst, rise);
    }
    out.push_back({"lyapunov", worst <= kLyapunovTolerance, "max relative increase = " + sci(worst)});
  }

  if (scenario == Scenario::euler_damping) {
    double bmax = 0.0;
    for (const auto& rec : records) {
      for (double v : rec.norm_b) bmax = std::max(bmax, v);
    }
    out.push_back({"b-zero", bmax == 0.0, "max |b| = " + sci(bmax)});
  }

  double residual = 0.0;
  for (const auto& rec : records) residual = std::max(residual, rec.energy_residual);
  out.push_back({"energy-residual", true, "max = " + sci(residual) + " (reported)"});
  return out;
}

std::string summary_line(const std::vector<CheckResult>& checks, bool aborted) {
  std::string failed;
  for (const auto& c : checks) {
    if (!c.passed) failed += (failed.empty() ? "" : ",") + c.name;
  }
  if (aborted) failed += std::string(failed.empty() ? "" : ",") + "aborted";
  std::ostringstream os;
  os << "summary: " << (failed.empty() ? "PASS" : "FAIL (" + failed + ")");
  for (const auto& c : checks) {
    os << "; " << c.name << ' ' << (c.passed ? "ok" : "FAIL") << " [" << c.detail << ']';
  }
  return os.str();
}

int RunResult::exit_code() const {
  if (aborted) return 3;
  for (const auto& c : checks) {
    if (!c.passed) return 2;
  }
  return 0;
}

double initial_step(const RunConfig& cfg) {
  if (cfg.dt) return *cfg.dt;
  const State init = generate_initial_data(cfg);
  return cfl_dt(init, PressureLaw(cfg.gamma), scenario_omega(cfg), step_control(cfg));
}

RunResult run_scenario(const RunConfig& cfg, const RunSinks& sinks) {
  cfg.validate();
  const Grid grid(cfg.n);
  const PressureLaw pl(cfg.gamma);
  const Vec3 omega = scenario_omega(cfg);
  const StepControl ctrl = step_control(cfg);

  RunResult result(State{grid});
  result.density_weight = cfg.density_weight;
  result.A = cfg.A ? *cfg.A : calibrated_A(grid, omega, cfg);

  DiagnosticsSettings settings;
  settings.omega = omega;
  settings.r = cfg.r;
  settings.A = result.A;
  settings.density_weight = result.density_weight;
  settings.pressure = pl;
  settings.orders = cfg.orders.value_or(default_orders(cfg.r));

  // The step is fixed from the t = 0 data even when resuming, so a restarted
  // run takes exactly the steps of the uninterrupted one.
  const State initial = generate_initial_data(cfg);
  const double dt_guess = cfg.dt ? *cfg.dt : cfl_dt(initial, pl, omega, ctrl);
  const StepSplit split = split_sample_interval(cfg.sample_dt, dt_guess);
  result.dt = split.dt;

  State start = initial;
  const bool resuming = !cfg.resume.empty();
  if (resuming) {
    Checkpoint ck = read_checkpoint(std::filesystem::path(cfg.resume));
    if (ck.state.grid().n() != cfg.n) throw std::invalid_argument("checkpoint resolution differs from config");
    if (ck.r != cfg.r || ck.omega != omega) {
      throw std::invalid_argument("checkpoint background (r, omega) differs from config");
    }
    start = std::move(ck.state);
  }

  std::optional<DiagnosticsRecord> previous;
  if (resuming) previous = sample_record(start, result.dt, settings);

  auto emit = [&](DiagnosticsRecord rec) {
    if (previous) rec.energy_residual = energy_residual(*previous, rec);
    if (sinks.ndjson) {
      *sinks.ndjson << to_ndjson_line(rec) << '\n';
      sinks.ndjson->flush();
    }
    if (sinks.csv) {
      if (result.records.empty() && !resuming) *sinks.csv << csv_header(rec.orders) << '\n';
      *sinks.csv << csv_row(rec) << '\n';
      sinks.csv->flush();
    }
    previous = rec;
    result.records.push_back(std::move(rec));
  };

  auto on_sample = [&](const State& s, double dt, long) {
    emit(sample_record(s, dt, settings));
    if (cfg.checkpoint_every > 0) {
      const long sample = std::lround(s.t / cfg.sample_dt);
      const bool aligned = std::abs(s.t - sample * cfg.sample_dt) <= 1e-9 * cfg.sample_dt;
      if (aligned && sample > 0 && sample % cfg.checkpoint_every == 0) {
        std::filesystem::create_directories(cfg.checkpoint_dir);
        write_checkpoint(checkpoint_path(cfg.checkpoint_dir, sample), s, cfg.r, omega);
      }
    }
  };

  IntegrationPlan plan;
  plan.t_final = cfg.t_final;
  plan.sample_dt = cfg.sample_dt;
  plan.dt = result.dt;
  plan.recompute_dt = cfg.recompute_dt;
  plan.emit_initial = !resuming;
  plan.ctrl = ctrl;

  std::function<double(const State&)> dt_of;
  if (cfg.recompute_dt) dt_of = [&](const State& s) { return cfl_dt(s, pl, omega, ctrl); };

  IntegrationOutcome outcome = integrate(start, plan, make_rhs(cfg, omega, pl), on_sample, dt_of);
  result.steps = outcome.steps;
  result.aborted = outcome.aborted;
  result.message = outcome.message;
  if (outcome.aborted && (result.records.empty() || result.records.back().t != outcome.final_state.t)) {
    emit(sample_record(outcome.final_state, result.dt, settings));
  }
  result.final_state = std::move(outcome.final_state);
  result.checks = evaluate_checks(result.records, cfg.scenario);
  return result;
}

RunResult run_to_files(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  auto open = [&](const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    const auto mode = cfg.resume.empty() ? std::ios::out | std::ios::trunc : std::ios::out | std::ios::app;
    std::ofstream f(path, mode);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    return f;
  };
  std::ofstream nd = open(cfg.ndjson);
  std::ofstream csv;
  if (!cfg.csv.empty()) csv = open(cfg.csv);

  RunResult result = run_scenario(cfg, {&nd, cfg.csv.empty() ? nullptr : &csv});
  log << "scenario " << to_string(cfg.scenario) << ": " << result.records.size() << " records, "
      << result.steps << " steps, dt = " << result.dt << ", A = " << result.A << '\n';
  if (result.aborted) log << "aborted: " << result.message << '\n';
  log << summary_line(result.checks, result.aborted) << '\n';
  return result;
}

}  // namespace dmhd
