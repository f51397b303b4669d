#pragma once

#include "dmhd/spectral_field.hpp"

namespace dmhd {

/// Perturbation (a, u, b) = (ρ - 1, u, H - ω) at time t.
struct State {
  double t = 0.0;
  SpectralField a;
  SpectralField u;
  SpectralField b;

  explicit State(Grid grid)
      : a(SpectralField::scalar(grid)), u(SpectralField::vector(grid)), b(SpectralField::vector(grid)) {}

  [[nodiscard]] const Grid& grid() const { return a.grid(); }

  State& operator+=(const State& other);
  State& operator*=(double s);
  /// Fields only; t is left alone.
  State& axpy(double s, const State& other);

  friend bool operator==(const State&, const State&) = default;
};

[[nodiscard]] State equilibrium(Grid grid);

/// Scales the fields (not t).
[[nodiscard]] State scaled(const State& s, double factor);

/// sqrt(‖a‖²_s + ‖u‖²_s + ‖b‖²_s).
[[nodiscard]] double state_norm(const State& s, double order);

}  // namespace dmhd
