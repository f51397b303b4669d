#include "dmhd/integrator.hpp"

#include <cmath>
#include <sstream>

#include "dmhd/dynamics.hpp"
#include "dmhd/operators.hpp"
#include "dmhd/transform.hpp"

namespace dmhd {

void StepControl::validate() const {
  if (!(safety > 0.0 && safety <= 1.0)) throw std::invalid_argument("CFL safety must lie in (0, 1]");
  if (!(dt_max > 0.0)) throw std::invalid_argument("dt_max must be positive");
  if (reproject_every < 1) throw std::invalid_argument("reproject_every must be >= 1");
}

double cfl_dt(const State& s, const PressureLaw& pl, const Vec3& omega, const StepControl& ctrl) {
  ctrl.validate();
  const double umax = to_physical(s.u).max_magnitude();
  const double bmax = to_physical(s.b).max_magnitude();
  const double speed = std::sqrt(pl.beta()) + norm(omega) + umax + bmax;
  return std::min(ctrl.dt_max, ctrl.safety * s.grid().dx() / speed);
}

State rk4_step(const State& s, double dt, const RightHandSide& rhs) {
  auto stage = [&](const State& base, double h, const State& k, double t) {
    State y = base;
    y.axpy(h, k);
    y.t = t;
    return y;
  };
  try {
    const State k1 = rhs(s);
    const State k2 = rhs(stage(s, 0.5 * dt, k1, s.t + 0.5 * dt));
    const State k3 = rhs(stage(s, 0.5 * dt, k2, s.t + 0.5 * dt));
    const State k4 = rhs(stage(s, dt, k3, s.t + dt));
    State out = s;
    out.axpy(dt / 6.0, k1);
    out.axpy(dt / 3.0, k2);
    out.axpy(dt / 3.0, k3);
    out.axpy(dt / 6.0, k4);
    out.t = s.t + dt;
    return out;
  } catch (const DensityBandError&) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density band violated at t=" << s.t;
    throw IntegrationAborted(msg.str());
  }
}

void reproject(State& s) {
  project_divfree_inplace(s.b);
  project_meanzero_inplace(s.a);
  project_meanzero_inplace(s.b);
}

StepSplit split_sample_interval(double sample_dt, double dt_guess) {
  if (!(sample_dt > 0.0) || !(dt_guess > 0.0)) {
    throw std::invalid_argument("sample interval and step size must be positive");
  }
  const long m = std::max(1L, static_cast<long>(std::ceil(sample_dt / dt_guess - 1e-9)));
  return {m, sample_dt / static_cast<double>(m)};
}

IntegrationOutcome integrate(State state, const IntegrationPlan& plan, const RightHandSide& rhs,
                             const SampleObserver& on_sample,
                             const std::function<double(const State&)>& dt_of) {
  plan.ctrl.validate();
  IntegrationOutcome outcome{state, 0, false, {}};
  if (on_sample && plan.emit_initial) on_sample(state, plan.dt, 0);
  if (!(plan.t_final > state.t)) {
    outcome.final_state = std::move(state);
    return outcome;
  }

  auto after_step = [&](State& s, long step) {
    if (step % plan.ctrl.reproject_every == 0) reproject(s);
  };

  try {
    if (!plan.recompute_dt) {
      const StepSplit split = split_sample_interval(plan.sample_dt, plan.dt);
      const double dt = split.dt;
      long step = std::lround(state.t / dt);
      const long last = static_cast<long>(std::ceil(plan.t_final / dt - 1e-9));
      while (step < last) {
        State next = rk4_step(state, dt, rhs);
        ++step;
        next.t = static_cast<double>(step) * dt;
        after_step(next, step);
        state = std::move(next);
        ++outcome.steps;
        if (on_sample && (step % split.steps_per_sample == 0 || step == last)) {
          on_sample(state, dt, step);
        }
      }
    } else {
      long step = 0;
      double next_sample = state.t + plan.sample_dt;
      while (state.t < plan.t_final * (1.0 - 1e-15)) {
        const double target = std::min(next_sample, plan.t_final);
        double dt = dt_of ? dt_of(state) : plan.dt;
        bool hits = false;
        if (state.t + dt >= target * (1.0 - 1e-13)) {
          dt = target - state.t;
          hits = true;
        }
        State next = rk4_step(state, dt, rhs);
        ++step;
        if (hits) next.t = target;
        after_step(next, step);
        state = std::move(next);
        ++outcome.steps;
        if (hits) {
          if (on_sample) on_sample(state, dt, step);
          next_sample += plan.sample_dt;
        }
      }
    }
  } catch (const IntegrationAborted& e) {
    outcome.aborted = true;
    outcome.message = e.what();
  }
  outcome.final_state = std::move(state);
  return outcome;
}

}  // namespace dmhd
