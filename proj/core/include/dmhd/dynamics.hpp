#pragma once

#include <span>
#include <stdexcept>
#include <string>

#include "dmhd/grid.hpp"
#include "dmhd/pressure_law.hpp"
#include "dmhd/state.hpp"

namespace dmhd {

/// Density left the admissible band |a| < 1/2.
class DensityBandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDensityBand = 0.5;

/// Maximum of |a| over the grid.
[[nodiscard]] double max_abs_density(const State& s);

/// Time derivative of the full perturbation system, written with u as the
/// primary unknown (momentum divided by ρ = 1 + a). The induction term is
/// evaluated in curl form, curl(u × (ω + b)), which equals
/// -(u·∇)b + ((ω+b)·∇)u - (ω+b) div u when div b = 0. All quadratic and
/// higher products are dealiased.
[[nodiscard]] State nonlinear_rhs(const State& s, const Vec3& omega, const PressureLaw& pl);

/// Linearization about (1, 0, ω).
[[nodiscard]] State linearized_rhs(const State& s, const Vec3& omega, double beta);

/// Torus mean of e(1 + a).
[[nodiscard]] double potential_energy(const State& s, const PressureLaw& pl);

/// Nonlinear remainders f1, f2, f3 reconstructed from a computed time
/// derivative: f = d/dt(state) - linearized_rhs(state).
struct NonlinearRemainders {
  SpectralField f1;
  SpectralField f2;
  SpectralField f3;
};
[[nodiscard]] NonlinearRemainders nonlinear_remainders(const State& s, const State& dsdt,
                                                       const Vec3& omega, double beta);

/// Residual norms of the second-order wave identities satisfied by the
/// linearized flow, with time derivatives from central differences around
/// history[1]. history must be equally spaced by dt.
[[nodiscard]] double wave_residual_density(std::span<const State, 3> history, double dt,
                                           const Vec3& omega, double beta);
[[nodiscard]] double wave_residual_magnetic(std::span<const State, 3> history, double dt,
                                            const Vec3& omega, double beta);

}  // namespace dmhd
