#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "dmhd/pressure_law.hpp"
#include "dmhd/state.hpp"

namespace dmhd {

struct StepControl {
  double safety = 0.4;
  double dt_max = std::numeric_limits<double>::infinity();
  int reproject_every = 1;

  void validate() const;
};

/// Integration aborted (e.g. the density left its band mid-step).
class IntegrationAborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using RightHandSide = std::function<State(const State&)>;

/// min(dt_max, safety·Δx / (√β + |ω| + max|u| + max|b|)).
[[nodiscard]] double cfl_dt(const State& s, const PressureLaw& pl, const Vec3& omega,
                            const StepControl& ctrl);

/// One classical RK4 step; t advances by dt. Constraint re-projection is
/// separate (see reproject).
[[nodiscard]] State rk4_step(const State& s, double dt, const RightHandSide& rhs);

/// div b := 0 by Leray projection; mean(a) := 0; mean(b) := 0. The mean of
/// u is left free.
void reproject(State& s);

struct IntegrationPlan {
  double t_final = 0.0;
  double sample_dt = 0.0;
  /// Step size; when recompute_dt is set it is only the initial guess and the
  /// step is refreshed from cfl_dt before every step.
  double dt = 0.0;
  bool recompute_dt = false;
  /// Call the observer for the starting state (off when resuming).
  bool emit_initial = true;
  StepControl ctrl;
};

/// Observer called for the starting state and at every sample time with the
/// state, the step size in force, and the global step count.
using SampleObserver = std::function<void(const State&, double dt, long step)>;

struct IntegrationOutcome {
  State final_state;
  long steps = 0;
  bool aborted = false;
  std::string message;
};

/// Sample-aligned fixed-step integration: each sample interval is split into
/// ceil(sample_dt/dt) equal steps and t is recomputed from the step count, so
/// restarting from a saved (t, state) continues bit-identically.
[[nodiscard]] IntegrationOutcome integrate(State initial, const IntegrationPlan& plan,
                                           const RightHandSide& rhs,
                                           const SampleObserver& on_sample,
                                           const std::function<double(const State&)>& dt_of = {});

/// Number of equal steps per sample interval and the resulting step size.
struct StepSplit {
  long steps_per_sample = 1;
  double dt = 0.0;
};
[[nodiscard]] StepSplit split_sample_interval(double sample_dt, double dt_guess);

}  // namespace dmhd
