#include "dmhd/dynamics.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "dmhd/operators.hpp"
#include "dmhd/transform.hpp"

namespace dmhd {
namespace {

// ∂_j of every component of a vector field, in physical space: out[j][i] = ∂_j v_i.
std::array<PhysicalField, 3> physical_jacobian(const SpectralField& v) {
  return {to_physical(partial(v, 0)), to_physical(partial(v, 1)), to_physical(partial(v, 2))};
}

void check_band(double max_a) {
  if (!(max_a < kDensityBand)) throw DensityBandError("density band violated");
}

}  // namespace

double max_abs_density(const State& s) { return to_physical(s.a).max_abs(); }

State linearized_rhs(const State& s, const Vec3& omega, double beta) {
  State out(s.grid());
  out.t = s.t;
  const SpectralField div_u = divergence(s.u);

  out.a = -1.0 * div_u;

  out.u = directional_derivative(s.b, omega);
  out.u -= gradient(along(s.b, omega));
  out.u.axpy(-beta, gradient(s.a));
  out.u -= s.u;

  out.b = directional_derivative(s.u, omega);
  out.b -= times_vector(omega, div_u);
  return out;
}

State nonlinear_rhs(const State& s, const Vec3& omega, const PressureLaw& pl) {
  const Grid& g = s.grid();
  const std::size_t m = g.physical_size();
  const double beta = pl.beta();

  const PhysicalField ap = to_physical(s.a);
  check_band(ap.max_abs());
  const PhysicalField up = to_physical(s.u);
  const PhysicalField bp = to_physical(s.b);
  const bool quadratic_pressure = pl.gamma() == 2.0;
  // P'(ρ)/ρ = β exactly when γ = 2, so ∇a only enters for other laws.
  const PhysicalField grad_a =
      quadratic_pressure ? PhysicalField(g, 3) : to_physical(gradient(s.a));
  const auto du = physical_jacobian(s.u);
  const auto db = physical_jacobian(s.b);

  State out = linearized_rhs(s, omega, beta);

  // Mass flux a·u.
  PhysicalField mass_flux(g, 3);
  // Momentum remainder.
  PhysicalField mom(g, 3);
  // Electric field u × b.
  PhysicalField emf(g, 3);

  using Span = std::span<const double>;
  const Span a = ap.component(0);
  const Span ga[3] = {grad_a.component(0), grad_a.component(1), grad_a.component(2)};
  const Span u[3] = {up.component(0), up.component(1), up.component(2)};
  const Span b[3] = {bp.component(0), bp.component(1), bp.component(2)};
  // dU[j][i] = ∂_j u_i, dB likewise.
  Span dU[3][3];
  Span dB[3][3];
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      dU[j][i] = du[j].component(i);
      dB[j][i] = db[j].component(i);
    }
  }
  const std::span<double> mf[3] = {mass_flux.component(0), mass_flux.component(1),
                                   mass_flux.component(2)};
  const std::span<double> mo[3] = {mom.component(0), mom.component(1), mom.component(2)};
  const std::span<double> ef[3] = {emf.component(0), emf.component(1), emf.component(2)};

  for (std::size_t p = 0; p < m; ++p) {
    const double rho = 1.0 + a[p];
    const double inv_rho = 1.0 / rho;
    const double pressure_excess = quadratic_pressure ? 0.0 : pl.dpressure(rho) * inv_rho - beta;
    for (int i = 0; i < 3; ++i) {
      mf[i][p] = a[p] * u[i][p];
      double adv = 0.0, lin_lorentz = 0.0, nl_lorentz = 0.0;
      for (int j = 0; j < 3; ++j) {
        const double curlish = dB[j][i][p] - dB[i][j][p];
        adv += u[j][p] * dU[j][i][p];
        lin_lorentz += omega[j] * curlish;
        nl_lorentz += b[j][p] * curlish;
      }
      mo[i][p] = -adv - pressure_excess * ga[i][p] + (inv_rho - 1.0) * lin_lorentz +
                 inv_rho * nl_lorentz;
    }
    ef[0][p] = u[1][p] * b[2][p] - u[2][p] * b[1][p];
    ef[1][p] = u[2][p] * b[0][p] - u[0][p] * b[2][p];
    ef[2][p] = u[0][p] * b[1][p] - u[1][p] * b[0][p];
  }

  SpectralField flux = to_spectral(mass_flux);
  dealias_inplace(flux);
  out.a -= divergence(flux);

  SpectralField mom_hat = to_spectral(mom);
  dealias_inplace(mom_hat);
  out.u += mom_hat;

  SpectralField emf_hat = to_spectral(emf);
  dealias_inplace(emf_hat);
  out.b += curl(emf_hat);
  project_divfree_inplace(out.b);
  return out;
}

double potential_energy(const State& s, const PressureLaw& pl) {
  const PhysicalField ap = to_physical(s.a);
  check_band(ap.max_abs());
  double sum = 0.0;
  for (double v : ap.component(0)) sum += pl.potential_energy_density(1.0 + v);
  return sum / static_cast<double>(s.grid().physical_size());
}

NonlinearRemainders nonlinear_remainders(const State& s, const State& dsdt, const Vec3& omega,
                                         double beta) {
  const State lin = linearized_rhs(s, omega, beta);
  return {dsdt.a - lin.a, dsdt.u - lin.u, dsdt.b - lin.b};
}

}  // namespace dmhd
