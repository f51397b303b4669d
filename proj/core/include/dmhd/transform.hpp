#pragma once

#include "dmhd/spectral_field.hpp"

namespace dmhd {

/// Inverse transform: coefficients to grid values.
[[nodiscard]] PhysicalField to_physical(const SpectralField& f);
/// Forward transform with mean normalization (divides by n³).
[[nodiscard]] SpectralField to_spectral(const PhysicalField& f);

/// Single-component helpers used by the nonlinear kernels.
void inverse_component(const SpectralField& f, int c, std::span<double> out);
void forward_component(std::span<const double> in, SpectralField& f, int c);

}  // namespace dmhd
