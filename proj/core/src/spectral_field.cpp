#include "dmhd/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmhd {

SpectralField::SpectralField(Grid grid, int components)
    : grid_(grid), components_(components) {
  if (components != 1 && components != 3) {
    throw std::invalid_argument("spectral field must have 1 or 3 components");
  }
  coeffs_.assign(static_cast<std::size_t>(components) * grid_.spectral_size(), Complex{});
}

std::span<Complex> SpectralField::component(int c) {
  const auto m = grid_.spectral_size();
  return std::span<Complex>(coeffs_).subspan(c * m, m);
}

std::span<const Complex> SpectralField::component(int c) const {
  const auto m = grid_.spectral_size();
  return std::span<const Complex>(coeffs_).subspan(c * m, m);
}

Complex SpectralField::coeff(int c, const Wavevector& k) const {
  const int h = grid_.n() / 2;
  if (std::abs(k.x) > h || std::abs(k.y) > h || std::abs(k.z) > h) {
    throw std::out_of_range("wavevector outside the resolved range");
  }
  if (k.z >= 0) {
    return at(c, grid_.flat(grid_.index(k.x), grid_.index(k.y), k.z));
  }
  return std::conj(at(c, grid_.flat(grid_.index(-k.x), grid_.index(-k.y), -k.z)));
}

void SpectralField::set_mode(int c, const Wavevector& k, Complex value) {
  const int h = grid_.n() / 2;
  if (std::abs(k.x) > h || std::abs(k.y) > h || std::abs(k.z) > h) {
    throw std::out_of_range("wavevector outside the resolved range");
  }
  const int h2 = grid_.n() / 2;
  const bool self_conjugate_plane = k.z == 0 || std::abs(k.z) == h2;
  if (!self_conjugate_plane) {
    if (k.z > 0) {
      at(c, grid_.flat(grid_.index(k.x), grid_.index(k.y), k.z)) = value;
    } else {
      at(c, grid_.flat(grid_.index(-k.x), grid_.index(-k.y), -k.z)) = std::conj(value);
    }
    return;
  }
  // Both k and -k live in the stored plane.
  const int iz = std::abs(k.z);
  const std::size_t p = grid_.flat(grid_.index(k.x), grid_.index(k.y), iz);
  const std::size_t q = grid_.flat(grid_.index(-k.x), grid_.index(-k.y), iz);
  if (p == q) {
    at(c, p) = Complex(value.real(), 0.0);
  } else {
    at(c, p) = value;
    at(c, q) = std::conj(value);
  }
}

Vec3 SpectralField::mean_vector() const {
  if (components_ != 3) {
    throw std::logic_error("mean_vector on a scalar field");
  }
  return {mean(0).real(), mean(1).real(), mean(2).real()};
}

void SpectralField::set_zero() { std::fill(coeffs_.begin(), coeffs_.end(), Complex{}); }

void SpectralField::require_compatible(const SpectralField& other) const {
  if (!(grid_ == other.grid_) || components_ != other.components_) {
    throw std::invalid_argument("incompatible spectral fields");
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& v : coeffs_) v *= s;
  return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * other.coeffs_[i];
  return *this;
}

PhysicalField::PhysicalField(Grid grid, int components) : grid_(grid), components_(components) {
  values_.assign(static_cast<std::size_t>(components) * grid_.physical_size(), 0.0);
}

std::span<double> PhysicalField::component(int c) {
  const auto m = grid_.physical_size();
  return std::span<double>(values_).subspan(c * m, m);
}

std::span<const double> PhysicalField::component(int c) const {
  const auto m = grid_.physical_size();
  return std::span<const double>(values_).subspan(c * m, m);
}

double PhysicalField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double PhysicalField::max_magnitude() const {
  const auto m = grid_.physical_size();
  double best = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (int c = 0; c < components_; ++c) s += values_[c * m + i] * values_[c * m + i];
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

namespace {

template <typename Fn>
void for_each_plane_pair(const Grid& g, Fn&& fn) {
  const int n = g.n();
  for (int iz : {0, n / 2}) {
    for (int ix = 0; ix < n; ++ix) {
      for (int iy = 0; iy < n; ++iy) {
        const int jx = (n - ix) % n;
        const int jy = (n - iy) % n;
        fn(g.flat(ix, iy, iz), g.flat(jx, jy, iz));
      }
    }
  }
}

}  // namespace

double hermitian_defect(const SpectralField& f) {
  double worst = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    for_each_plane_pair(f.grid(), [&](std::size_t p, std::size_t q) {
      worst = std::max(worst, std::abs(f.at(c, p) - std::conj(f.at(c, q))));
    });
  }
  return worst;
}

void enforce_hermitian(SpectralField& f) {
  const Grid& g = f.grid();
  const int h = g.n() / 2;
  for (int c = 0; c < f.components(); ++c) {
    for_each_plane_pair(g, [&](std::size_t p, std::size_t q) {
      if (p <= q) {
        const Complex avg = 0.5 * (f.at(c, p) + std::conj(f.at(c, q)));
        f.at(c, p) = avg;
        f.at(c, q) = std::conj(avg);
      }
    });
    for_each_mode(g, [&](std::size_t idx, int ix, int iy, int iz) {
      if (ix == h || iy == h || iz == h) f.at(c, idx) = Complex{};
    });
  }
}

}  // namespace dmhd
