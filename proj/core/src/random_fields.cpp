#include "dmhd/random_fields.hpp"

#include <cmath>

namespace dmhd {

SpectralField random_field(const Grid& grid, int components, double k_max, std::mt19937_64& rng,
                           const Envelope& envelope) {
  SpectralField f(grid, components);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double kmax2 = k_max * k_max;
  for (int c = 0; c < components; ++c) {
    for_each_mode(grid, [&](std::size_t idx, int ix, int iy, int iz) {
      const Wavevector k = grid.wavevector(ix, iy, iz);
      const double k2 = static_cast<double>(k.norm2());
      if (k2 == 0.0 || k2 > kmax2) return;
      const double re = normal(rng);
      const double im = normal(rng);
      f.at(c, idx) = envelope(std::sqrt(k2)) * Complex(re, im);
    });
  }
  enforce_hermitian(f);
  return f;
}

}  // namespace dmhd
