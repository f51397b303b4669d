#pragma once

#include "dmhd/config.hpp"
#include "dmhd/state.hpp"

namespace dmhd {

/// Deterministic initial perturbation for cfg.scenario.
///
/// Random scenarios draw Gaussian band-limited fields (|k| ≤ k_max, default
/// n/4) with amplitude envelope exp(-|k|²/(2w²)) for spectral_width w > 0,
/// project b onto divergence-free fields, zero the means of a and b, and then
/// alternate a global rescale to ‖(a,u,b)‖_{H⁴} = ε with a shift of mean(u)
/// making ∫(1+a)u equal cfg.mean_momentum, until both hold to 1e-13.
/// euler-damping leaves b ≡ 0; single-mode-acoustic is a = ε·cos(x₁).
[[nodiscard]] State generate_initial_data(const RunConfig& cfg);

/// The background field a scenario actually uses (zero for the ω-free ones).
[[nodiscard]] Vec3 scenario_omega(const RunConfig& cfg);

}  // namespace dmhd
