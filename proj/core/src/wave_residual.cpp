#include <cmath>
#include <stdexcept>

#include "dmhd/dynamics.hpp"
#include "dmhd/operators.hpp"

namespace dmhd {
namespace {

void require_uniform(std::span<const State, 3> h, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("wave residual: dt must be positive");
  const double tol = 1e-9 * std::max(1.0, std::abs(h[1].t)) + 1e-12 * dt;
  if (std::abs((h[1].t - h[0].t) - dt) > tol || std::abs((h[2].t - h[1].t) - dt) > tol) {
    throw std::invalid_argument("wave residual: non-uniform spacing");
  }
}

SpectralField second_difference(const SpectralField& f0, const SpectralField& f1,
                                 const SpectralField& f2, double dt) {
  SpectralField out = f2;
  out.axpy(-2.0, f1);
  out += f0;
  out *= 1.0 / (dt * dt);
  return out;
}

SpectralField central_difference(const SpectralField& f0, const SpectralField& f2, double dt) {
  SpectralField out = f2 - f0;
  out *= 0.5 / dt;
  return out;
}

}  // namespace

// a_tt - βΔa + a_t + div((ω·∇)b - ∇(ω·b)) = 0
double wave_residual_density(std::span<const State, 3> h, double dt, const Vec3& omega,
                             double beta) {
  require_uniform(h, dt);
  const State& mid = h[1];
  SpectralField r = second_difference(h[0].a, mid.a, h[2].a, dt);
  r.axpy(-beta, divergence(gradient(mid.a)));
  r += central_difference(h[0].a, h[2].a, dt);
  SpectralField lorentz = directional_derivative(mid.b, omega);
  lorentz -= gradient(along(mid.b, omega));
  r += divergence(lorentz);
  return sobolev_norm(r, 0.0);
}

// Differentiating b_t = (ω·∇)u - ω div u in time, substituting the momentum
// equation, and using (ω·∇)u = b_t + ω div u once more:
//   b_tt - (ω·∇)²b + b_t + ω(∂_t div u + div u) + β(ω·∇)∇a + (ω·∇)∇(ω·b) = 0
double wave_residual_magnetic(std::span<const State, 3> h, double dt, const Vec3& omega,
                              double beta) {
  require_uniform(h, dt);
  const State& mid = h[1];
  SpectralField r = second_difference(h[0].b, mid.b, h[2].b, dt);
  r -= directional_derivative(directional_derivative(mid.b, omega), omega);
  r += central_difference(h[0].b, h[2].b, dt);
  SpectralField compress = divergence(central_difference(h[0].u, h[2].u, dt));
  compress += divergence(mid.u);
  r += times_vector(omega, compress);
  r.axpy(beta, directional_derivative(gradient(mid.a), omega));
  r += directional_derivative(gradient(along(mid.b, omega)), omega);
  return sobolev_norm(r, 0.0);
}

}  // namespace dmhd
