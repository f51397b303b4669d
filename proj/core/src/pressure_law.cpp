#include "dmhd/pressure_law.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmhd {

PressureLaw::PressureLaw(double gamma) : gamma_(gamma) {
  if (!(gamma > 1.0)) throw std::invalid_argument("adiabatic exponent must exceed 1");
}

double PressureLaw::pressure(double rho) const { return std::pow(rho, gamma_); }

double PressureLaw::dpressure(double rho) const {
  return gamma_ * std::pow(rho, gamma_ - 1.0);
}

double PressureLaw::d2pressure(double rho) const {
  return gamma_ * (gamma_ - 1.0) * std::pow(rho, gamma_ - 2.0);
}

double PressureLaw::derivative(int order, double rho) const {
  double coeff = 1.0;
  for (int j = 0; j < order; ++j) coeff *= gamma_ - j;
  return coeff * std::pow(rho, gamma_ - order);
}

double PressureLaw::potential_energy_density(double rho) const {
  if (!(rho > 0.0)) throw std::domain_error("potential energy requires positive density");
  const double a = rho - 1.0;
  if (gamma_ == 2.0) return 2.0 * a * a;
  // 2[ρ(ρ^{γ-1} - 1)/(γ-1) - (ρ - 1)], evaluated without forming ρ^{γ-1} - 1 directly.
  const double m = gamma_ - 1.0;
  return 2.0 * (rho * std::expm1(m * std::log1p(a)) / m - a);
}

double PressureLaw::derivative_bound(int max_order) const {
  double best = 0.0;
  for (int k = 0; k <= max_order; ++k) {
    // |ρ^{γ-k}| is monotone on the band, so the sup sits at an endpoint.
    best = std::max({best, std::abs(derivative(k, 0.5)), std::abs(derivative(k, 1.5))});
  }
  return best;
}

}  // namespace dmhd
