#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dmhd/config.hpp"
#include "dmhd/diagnostics.hpp"
#include "dmhd/state.hpp"

namespace dmhd {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

/// Invariant suite over a finished record stream: divergence constraint,
/// constant means of a and b, the e^{-t} law for ∫(1+a)u (momentum-conserving
/// scenarios only), Lyapunov monotonicity (linearized only), b ≡ 0 for
/// euler-damping, plus a report-only line for the energy residual.
[[nodiscard]] std::vector<CheckResult> evaluate_checks(const std::vector<DiagnosticsRecord>& records,
                                                       Scenario scenario);

/// "summary: PASS" or "summary: FAIL (names)" followed by each check.
[[nodiscard]] std::string summary_line(const std::vector<CheckResult>& checks, bool aborted);

struct RunResult {
  explicit RunResult(State initial) : final_state(std::move(initial)) {}

  std::vector<DiagnosticsRecord> records;
  std::vector<CheckResult> checks;
  State final_state;
  double dt = 0.0;
  double A = 0.0;
  double density_weight = 1.0;
  long steps = 0;
  bool aborted = false;
  std::string message;

  /// 0 clean, 2 invariant failure, 3 aborted integration.
  [[nodiscard]] int exit_code() const;
};

/// Output streams are optional; every record is written and flushed as it
/// is produced. The config is used as given (call validate() first or let
/// this throw std::invalid_argument).
struct RunSinks {
  std::ostream* ndjson = nullptr;
  std::ostream* csv = nullptr;
};

[[nodiscard]] RunResult run_scenario(const RunConfig& cfg, const RunSinks& sinks = {});

/// Opens the configured output files, runs, and writes the summary to log.
[[nodiscard]] RunResult run_to_files(const RunConfig& cfg, std::ostream& log);

/// Step size the run will use before sample alignment: cfg.dt or the CFL
/// step of the regenerated initial data.
[[nodiscard]] double initial_step(const RunConfig& cfg);

}  // namespace dmhd
