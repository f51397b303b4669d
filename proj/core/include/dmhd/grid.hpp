#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace dmhd {

using Vec3 = std::array<double, 3>;

/// Integer lattice vector of the 2π-periodic torus.
struct Wavevector {
  int x = 0;
  int y = 0;
  int z = 0;

  [[nodiscard]] long norm2() const {
    return static_cast<long>(x) * x + static_cast<long>(y) * y + static_cast<long>(z) * z;
  }
  friend bool operator==(const Wavevector&, const Wavevector&) = default;
};

[[nodiscard]] inline double dot(const Vec3& w, const Wavevector& k) {
  return w[0] * k.x + w[1] * k.y + w[2] * k.z;
}
[[nodiscard]] inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
[[nodiscard]] double norm(const Vec3& v);

/// Uniform n×n×n grid on [0, 2π)³. Spectral data uses the real-to-complex
/// half layout n × n × (n/2 + 1) with the last axis holding kz ≥ 0.
class Grid {
 public:
  explicit Grid(int n);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int nz() const { return n_ / 2 + 1; }
  [[nodiscard]] std::size_t physical_size() const {
    return static_cast<std::size_t>(n_) * n_ * n_;
  }
  [[nodiscard]] std::size_t spectral_size() const {
    return static_cast<std::size_t>(n_) * n_ * nz();
  }
  [[nodiscard]] double dx() const;

  /// Signed wavenumber of FFT index i; the Nyquist index maps to +n/2.
  [[nodiscard]] int wavenumber(int i) const { return i <= n_ / 2 ? i : i - n_; }
  /// Wavenumber used by odd-order multipliers: Nyquist is treated as 0 so
  /// that real fields stay real.
  [[nodiscard]] int odd_wavenumber(int i) const { return i == n_ / 2 ? 0 : wavenumber(i); }
  /// Index of signed wavenumber k on a full axis (requires |k| ≤ n/2).
  [[nodiscard]] int index(int k) const { return k >= 0 ? k : k + n_; }

  /// Largest retained |k_i| under the two-thirds rule.
  [[nodiscard]] int dealias_cutoff() const { return n_ / 3; }

  [[nodiscard]] std::size_t flat(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(ix) * n_ + iy) * nz() + iz;
  }
  [[nodiscard]] Wavevector wavevector(int ix, int iy, int iz) const {
    return {wavenumber(ix), wavenumber(iy), iz};
  }
  [[nodiscard]] Wavevector odd_wavevector(int ix, int iy, int iz) const {
    return {odd_wavenumber(ix), odd_wavenumber(iy), odd_wavenumber(iz)};
  }
  /// Number of full-spectrum modes represented by a half-layout entry.
  [[nodiscard]] double multiplicity(int iz) const {
    return (iz == 0 || iz == n_ / 2) ? 1.0 : 2.0;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_;
};

/// fn(|k|²) tabulated for every |k|² a resolved wavevector can take, so
/// radial multipliers cost one evaluation per shell instead of per mode.
template <typename Fn>
std::vector<double> radial_table(const Grid& g, Fn&& fn) {
  const long h = g.n() / 2;
  std::vector<double> table(static_cast<std::size_t>(3 * h * h + 1));
  for (std::size_t k2 = 0; k2 < table.size(); ++k2) table[k2] = fn(static_cast<double>(k2));
  return table;
}

/// Visit every stored coefficient: fn(flat_index, ix, iy, iz).
template <typename Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
  const int n = g.n();
  const int nz = g.nz();
  std::size_t idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      for (int iz = 0; iz < nz; ++iz, ++idx) {
        fn(idx, ix, iy, iz);
      }
    }
  }
}

}  // namespace dmhd
