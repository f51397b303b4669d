#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dmhd/grid.hpp"
#include "dmhd/pressure_law.hpp"
#include "dmhd/state.hpp"

namespace dmhd {

// Every integral below is taken with respect to the normalized torus measure
// dx/(2π)³, consistent with sobolev_norm (the constant 1 has unit norm).

struct DiagnosticsRecord {
  double t = 0.0;
  double dt = 0.0;
  std::vector<double> orders;
  std::vector<double> norm_a;
  std::vector<double> norm_u;
  std::vector<double> norm_b;
  double total_energy = 0.0;
  double kinetic_dissipation = 0.0;
  double energy_residual = 0.0;
  double mean_a = 0.0;
  Vec3 mean_momentum{0.0, 0.0, 0.0};
  Vec3 mean_b{0.0, 0.0, 0.0};
  double div_b_norm = 0.0;
  double cross_density = 0.0;
  double cross_magnetic = 0.0;
  double lyapunov_E = 0.0;

  friend bool operator==(const DiagnosticsRecord&, const DiagnosticsRecord&) = default;
};

/// Upper summation limits of the Lyapunov functional for exponent r.
struct LyapunovOrders {
  int density_sum = 9;    // ⌊3r⌋
  int magnetic_sum = 13;  // ⌊4r+1⌋
  double energy = 14.0;   // ⌊4r+2⌋

  [[nodiscard]] static LyapunovOrders from_r(double r);
};

/// {0, 1, 2, 4, ⌊2r⌋, ⌊3r+1⌋, ⌊4r+2⌋} with duplicates removed.
[[nodiscard]] std::vector<double> default_orders(double r);

struct DiagnosticsSettings {
  Vec3 omega{0.0, 0.0, 0.0};
  double r = 3.0;
  double A = 4.0;
  /// Weight on ‖a‖² inside the A-term of the Lyapunov functional.
  double density_weight = 1.0;
  PressureLaw pressure{2.0};
  std::vector<double> orders = default_orders(3.0);
};

struct CrossTerms {
  double density = 0.0;   // Σ_{s≤S_a} ∫ (ω·∇)Λ^s a · Λ^s(u·ω)
  double magnetic = 0.0;  // Σ_{s≤S_b} ∫ Λ^s u · (ω·∇)Λ^s b
};

[[nodiscard]] CrossTerms cross_terms(const State& s, const Vec3& omega, int S_a, int S_b);

/// A‖(a,u,b)‖²_{H^{S₂}} + Σ_{s≤⌊3r⌋} density cross − Σ_{s≤⌊4r+1⌋} magnetic cross.
[[nodiscard]] double lyapunov(const State& s, const Vec3& omega, double A, double r,
                              double density_weight = 1.0);

/// Σ_{s=0}^{S} ∫ Λ^s f · Λ^s g, evaluated mode by mode.
[[nodiscard]] double stacked_pairing(const SpectralField& f, const SpectralField& g, int S);

/// Spectral value of d/dt of the density cross sum predicted by the exact
/// pre-estimate identity: for each s,
///   ∫(ω·∇)Λ^s(-div u + f1)·Λ^s(u·ω) − β‖(ω·∇)Λ^s a‖² − ∫(ω·∇)Λ^s a·Λ^s((ω·∇)(ω·b))
///   − ∫(ω·∇)Λ^s a·Λ^s(u·ω) + ∫(ω·∇)Λ^s a·Λ^s(ω·(ω·∇)b) + ∫(ω·∇)Λ^s a·Λ^s(ω·f2).
/// f1, f2 are the nonlinear remainders (zero for the linearized flow).
[[nodiscard]] double cross_density_rate(const State& s, const Vec3& omega, double beta, int S_a,
                                        const SpectralField* f1 = nullptr,
                                        const SpectralField* f2 = nullptr);

/// Sample every monitored scalar at one instant. energy_residual is left 0;
/// fill it from the previous record with energy_residual().
[[nodiscard]] DiagnosticsRecord sample_record(const State& s, double dt,
                                              const DiagnosticsSettings& settings);

/// |ΔE/Δt + 2·avg(kinetic_dissipation)| / max(E, floor) between consecutive
/// records (trapezoidal in time).
[[nodiscard]] double energy_residual(const DiagnosticsRecord& prev, const DiagnosticsRecord& next,
                                     double floor = 1e-300);

/// Fill energy_residual for every record after the first.
void fill_energy_residuals(std::span<DiagnosticsRecord> records, double floor = 1e-300);

struct MeanLawReport {
  double max_drift_mean_a = 0.0;
  double max_drift_mean_b = 0.0;
  /// max_t |m(t) − m(0)e^{−t}|, divided by |m(0)| when that is nonzero.
  double momentum_deviation = 0.0;
  bool momentum_relative = false;
  bool means_constant = false;
};

[[nodiscard]] MeanLawReport mean_laws_check(std::span<const DiagnosticsRecord> records,
                                            double tolerance = 1e-12);

struct DecayFit {
  double fitted_exponent = 0.0;
  /// −3(N−γ)/(2(2r+2)), as displayed in the decay estimate.
  double theoretical_exponent = 0.0;
  /// −(N−4r−2)/(2r+2), the rate for the Lyapunov functional itself.
  double lyapunov_exponent = 0.0;
  /// −(N−γ)/(2(2r+2)), what interpolating the Lyapunov rate gives.
  double interpolated_exponent = 0.0;
  /// max_t norm(t)/(1+t)^{theoretical}.
  double bound_constant = 0.0;
  std::size_t points_used = 0;
};

/// Least-squares slope of log y against log(1+t) over the tail half
/// t ≥ t_end/2. Requires (1+t_end)/(1+t_begin) ≥ 10 and ≥ 3 tail points.
[[nodiscard]] double fit_decay_exponent(std::span<const double> t, std::span<const double> y);

/// Decay of ‖(a,u,b)‖_{H^γ}; gamma_order must be one of the recorded orders.
[[nodiscard]] DecayFit decay_fit(std::span<const DiagnosticsRecord> records, double gamma_order,
                                 double N_order, double r);

/// ‖f‖₀ / ‖∇f‖₀ for mean-zero nonzero f.
[[nodiscard]] double meanzero_poincare_check(const SpectralField& f);

/// Both sides of ‖u‖₀ ≤ |∫(1+a)u| + K(1 + ‖a‖₀)‖∇u‖₀.
struct WeightedPoincare {
  double lhs = 0.0;
  double rhs = 0.0;
};
[[nodiscard]] WeightedPoincare weighted_poincare(const SpectralField& a, const SpectralField& u,
                                                 double K = 1.0);

/// Smallest power of two A ≥ 2 with lyapunov ≥ ‖(a,u,b)‖²_{H^{S₂}} on
/// `samples` random admissible states (flat spectra up to |k| ≤ n/3).
[[nodiscard]] double calibrate_lyapunov_A(const Grid& grid, const Vec3& omega, double r,
                                          int samples = 1000, std::uint64_t seed = 20240601,
                                          double density_weight = 1.0);

}  // namespace dmhd
