#pragma once

#include "dmhd/spectral_field.hpp"

namespace dmhd {

/// Λ^s, the Fourier multiplier |k|^s. For s > 0 the mean is annihilated; for
/// s < 0 the input must be mean-zero.
[[nodiscard]] SpectralField lambda_pow(const SpectralField& f, double s);

/// H^s norm with weight (1+|k|²)^{s/2}, summed over components.
[[nodiscard]] double sobolev_norm(const SpectralField& f, double s);

/// Torus mean of f·g (summed over components); the L² pairing of the
/// volume-normalized torus.
[[nodiscard]] double inner_product(const SpectralField& f, const SpectralField& g);

/// w·∇f, multiplier i(w·k).
[[nodiscard]] SpectralField directional_derivative(const SpectralField& f, const Vec3& w);

[[nodiscard]] SpectralField gradient(const SpectralField& scalar);
[[nodiscard]] SpectralField divergence(const SpectralField& vec);
[[nodiscard]] SpectralField curl(const SpectralField& vec);
/// Partial derivative ∂_axis applied to every component.
[[nodiscard]] SpectralField partial(const SpectralField& f, int axis);

/// (u·∇)f computed pointwise in physical space, then dealiased. f may be
/// scalar or vector.
[[nodiscard]] SpectralField advective_product(const SpectralField& u, const SpectralField& f);
/// Pointwise product f·g of two scalars, dealiased.
[[nodiscard]] SpectralField product(const SpectralField& f, const SpectralField& g);

/// Scalar field w·v.
[[nodiscard]] SpectralField along(const SpectralField& v, const Vec3& w);
/// Vector field w·f for a scalar f.
[[nodiscard]] SpectralField times_vector(const Vec3& w, const SpectralField& f);

/// Leray projection onto divergence-free fields; k = 0 untouched.
[[nodiscard]] SpectralField project_divfree(const SpectralField& b);
[[nodiscard]] SpectralField project_meanzero(const SpectralField& f);
/// Two-thirds rule: zero every coefficient with some |k_i| > n/3.
[[nodiscard]] SpectralField dealias(const SpectralField& f);

void project_divfree_inplace(SpectralField& b);
void project_meanzero_inplace(SpectralField& f);
void dealias_inplace(SpectralField& f);

}  // namespace dmhd
