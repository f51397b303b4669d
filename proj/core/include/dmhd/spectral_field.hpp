#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "dmhd/grid.hpp"

namespace dmhd {

using Complex = std::complex<double>;

/// Real scalar (1 component) or vector (3 components) field on the torus,
/// stored as Fourier coefficients normalized so that the coefficient at k is
/// the torus mean of f·exp(-ik·x). The k = 0 coefficient is the spatial mean.
class SpectralField {
 public:
  SpectralField(Grid grid, int components);

  static SpectralField scalar(Grid grid) { return {grid, 1}; }
  static SpectralField vector(Grid grid) { return {grid, 3}; }

  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] int components() const { return components_; }

  [[nodiscard]] std::span<Complex> component(int c);
  [[nodiscard]] std::span<const Complex> component(int c) const;
  [[nodiscard]] std::span<Complex> data() { return coeffs_; }
  [[nodiscard]] std::span<const Complex> data() const { return coeffs_; }

  Complex& at(int c, std::size_t flat) { return coeffs_[c * grid_.spectral_size() + flat]; }
  [[nodiscard]] const Complex& at(int c, std::size_t flat) const {
    return coeffs_[c * grid_.spectral_size() + flat];
  }

  /// Coefficient at any resolved wavevector (|k_i| ≤ n/2), using Hermitian
  /// symmetry for kz < 0.
  [[nodiscard]] Complex coeff(int c, const Wavevector& k) const;
  /// Set the coefficient at k and, consistently, its conjugate at -k.
  void set_mode(int c, const Wavevector& k, Complex value);

  [[nodiscard]] Complex mean(int c = 0) const { return at(c, 0); }
  [[nodiscard]] Vec3 mean_vector() const;

  void set_zero();

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);
  /// this += s * other
  SpectralField& axpy(double s, const SpectralField& other);

  friend SpectralField operator+(SpectralField lhs, const SpectralField& rhs) { return lhs += rhs; }
  friend SpectralField operator-(SpectralField lhs, const SpectralField& rhs) { return lhs -= rhs; }
  friend SpectralField operator*(double s, SpectralField f) { return f *= s; }

  friend bool operator==(const SpectralField&, const SpectralField&) = default;

 private:
  void require_compatible(const SpectralField& other) const;

  Grid grid_;
  int components_;
  std::vector<Complex> coeffs_;
};

/// Point values on the n³ grid, component-major, x slowest.
class PhysicalField {
 public:
  PhysicalField(Grid grid, int components);

  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] int components() const { return components_; }
  [[nodiscard]] std::span<double> component(int c);
  [[nodiscard]] std::span<const double> component(int c) const;

  [[nodiscard]] double max_abs() const;
  /// Pointwise maximum of the Euclidean magnitude across components.
  [[nodiscard]] double max_magnitude() const;

 private:
  Grid grid_;
  int components_;
  std::vector<double> values_;
};

/// Maximum |coeff(k) - conj(coeff(-k))| over the self-conjugate planes.
[[nodiscard]] double hermitian_defect(const SpectralField& f);
/// Average each coefficient with the conjugate of its mirror so the field is
/// exactly real; Nyquist planes are zeroed.
void enforce_hermitian(SpectralField& f);

}  // namespace dmhd
