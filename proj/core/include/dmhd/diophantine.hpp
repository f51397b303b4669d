#pragma once

#include "dmhd/grid.hpp"
#include "dmhd/spectral_field.hpp"

namespace dmhd {

/// |ω·k| at or below this is treated as an exact lattice resonance.
inline constexpr double kResonanceTolerance = 1e-14;

struct DiophantineScan {
  double c_empirical = 0.0;
  Wavevector witness;
};

/// Constant background magnetic field together with its measured
/// Diophantine data over the lattice ball |k| ≤ K.
struct BackgroundField {
  Vec3 omega{0.0, 0.0, 0.0};
  double r = 3.0;
  double c_empirical = 0.0;
  int K = 0;
  Wavevector witness;
};

/// Exhaustive min of |ω·k|·|k|^r over 0 < |k| ≤ K. Ties are broken towards
/// smaller |k|, then smaller (|kz|, |ky|, |kx|), with the first nonzero
/// component of the witness positive.
[[nodiscard]] DiophantineScan check_condition(const Vec3& omega, double r, int K);

[[nodiscard]] BackgroundField make_background(const Vec3& omega, double r = 3.0, int K = 30);

/// scale·(1, √2, √3) with its Diophantine constant measured at (K, r).
[[nodiscard]] BackgroundField default_omega(double scale, double r = 3.0, int K = 30);

/// ‖f‖_{H^s} / ‖ω·∇f‖_{H^{s+r}} for a mean-zero, nonzero f.
[[nodiscard]] double poincare_loss_ratio(const SpectralField& f, const Vec3& omega, double s,
                                         double r);

/// max over 0 < |k| ≤ K of |k|^r / (1+|k|²)^{r/2}; multiplies 1/c in the
/// uniform bound for band-limited fields.
[[nodiscard]] double poincare_weight_bound(double r, int K);

}  // namespace dmhd
