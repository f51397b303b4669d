#pragma once

namespace dmhd {

/// Isentropic pressure P(ρ) = ρ^γ, γ > 1.
class PressureLaw {
 public:
  explicit PressureLaw(double gamma = 2.0);

  [[nodiscard]] double gamma() const { return gamma_; }
  /// β = P'(1); the squared sound speed.
  [[nodiscard]] double beta() const { return gamma_; }

  [[nodiscard]] double pressure(double rho) const;
  [[nodiscard]] double dpressure(double rho) const;
  [[nodiscard]] double d2pressure(double rho) const;
  /// k-th derivative of P.
  [[nodiscard]] double derivative(int order, double rho) const;

  /// e(ρ) = 2ρ ∫_1^ρ (P(s) - P(1))/s² ds.
  [[nodiscard]] double potential_energy_density(double rho) const;

  /// sup over 0 ≤ k ≤ max_order and ρ ∈ (1/2, 3/2) of |P^(k)(ρ)|.
  /// Reported only; it has no role in the dynamics.
  [[nodiscard]] double derivative_bound(int max_order) const;

 private:
  double gamma_;
};

}  // namespace dmhd
