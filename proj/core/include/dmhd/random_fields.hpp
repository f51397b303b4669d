#pragma once

#include <functional>
#include <random>

#include "dmhd/spectral_field.hpp"

namespace dmhd {

/// Spectral amplitude as a function of |k|.
using Envelope = std::function<double(double)>;

/// Flat amplitude, the default for operator tests.
[[nodiscard]] inline Envelope flat_envelope() {
  return [](double) { return 1.0; };
}

/// Real random field with complex Gaussian coefficients scaled by envelope(|k|)
/// on 0 < |k| ≤ k_max (Euclidean), zero mean, and no Nyquist content.
[[nodiscard]] SpectralField random_field(const Grid& grid, int components, double k_max,
                                         std::mt19937_64& rng,
                                         const Envelope& envelope = flat_envelope());

}  // namespace dmhd
