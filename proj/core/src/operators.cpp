#include "dmhd/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dmhd/transform.hpp"

namespace dmhd {
namespace {

// i·m·v without the general complex product.
Complex i_times(double m, Complex v) { return {-m * v.imag(), m * v.real()}; }

bool has_mean(const SpectralField& f) {
  double scale = 0.0;
  for (const auto& v : f.data()) scale = std::max(scale, std::abs(v));
  for (int c = 0; c < f.components(); ++c) {
    if (std::abs(f.mean(c)) > 1e-14 * std::max(1.0, scale)) return true;
  }
  return false;
}

template <typename Multiplier>
SpectralField apply_multiplier(const SpectralField& f, Multiplier&& m) {
  SpectralField out(f.grid(), f.components());
  const Grid& g = f.grid();
  for_each_mode(g, [&](std::size_t idx, int ix, int iy, int iz) {
    const Complex mult = m(ix, iy, iz);
    for (int c = 0; c < f.components(); ++c) out.at(c, idx) = mult * f.at(c, idx);
  });
  return out;
}

void require_vector(const SpectralField& f, const char* op) {
  if (f.components() != 3) {
    throw std::invalid_argument(std::string(op) + " requires a vector field");
  }
}

}  // namespace

SpectralField lambda_pow(const SpectralField& f, double s) {
  if (s < 0.0 && has_mean(f)) {
    throw std::domain_error("negative-order multiplier on non-mean-zero field");
  }
  if (s == 0.0) return f;
  const Grid& g = f.grid();
  const auto table = radial_table(g, [s](double k2) { return k2 == 0.0 ? 0.0 : std::pow(k2, 0.5 * s); });
  return apply_multiplier(f, [&](int ix, int iy, int iz) -> Complex {
    return table[g.wavevector(ix, iy, iz).norm2()];
  });
}

double sobolev_norm(const SpectralField& f, double s) {
  const Grid& g = f.grid();
  const auto table = radial_table(g, [s](double k2) { return s == 0.0 ? 1.0 : std::pow(1.0 + k2, s); });
  double sum = 0.0;
  for_each_mode(g, [&](std::size_t idx, int ix, int iy, int iz) {
    const double w = g.multiplicity(iz) * table[g.wavevector(ix, iy, iz).norm2()];
    for (int c = 0; c < f.components(); ++c) sum += w * std::norm(f.at(c, idx));
  });
  return std::sqrt(sum);
}

double inner_product(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid()) || f.components() != g.components()) {
    throw std::invalid_argument("inner_product: incompatible fields");
  }
  const Grid& grid = f.grid();
  double sum = 0.0;
  for_each_mode(grid, [&](std::size_t idx, int, int, int iz) {
    const double w = grid.multiplicity(iz);
    for (int c = 0; c < f.components(); ++c) {
      sum += w * (f.at(c, idx) * std::conj(g.at(c, idx))).real();
    }
  });
  return sum;
}

SpectralField directional_derivative(const SpectralField& f, const Vec3& w) {
  const Grid& g = f.grid();
  SpectralField out(g, f.components());
  for_each_mode(g, [&](std::size_t idx, int ix, int iy, int iz) {
    const double m = dot(w, g.odd_wavevector(ix, iy, iz));
    for (int c = 0; c < f.components(); ++c) out.at(c, idx) = i_times(m, f.at(c, idx));
  });
  return out;
}

SpectralField partial(const SpectralField& f, int axis) {
  Vec3 e{0.0, 0.0, 0.0};
  e.at(axis) = 1.0;
  return directional_derivative(f, e);
}

SpectralField gradient(const SpectralField& scalar) {
  if (scalar.components() != 1) throw std::invalid_argument("gradient requires a scalar field");
  const Grid& g = scalar.grid();
  SpectralField out = SpectralField::vector(g);
  for_each_mode(g, [&](std::size_t idx, int ix, int iy, int iz) {
    const Wavevector k = g.odd_wavevector(ix, iy, iz);
    const Complex v = scalar.at(0, idx);
    out.at(0, idx) = i_times(k.x, v);
    out.at(1, idx) = i_times(k.y, v);
    out.at(2, idx) = i_times(k.z, v);
  });
  return out;
}

SpectralField divergence(const SpectralField& vec) {
  require_vector(vec, "divergence");
  const Grid& g = vec.grid();
  SpectralField out = SpectralField::scalar(g);
  for_each_mode(g, [&](std::size_t idx, int ix, int iy, int iz) {
    const Wavevector k = g.odd_wavevector(ix, iy, iz);
    out.at(0, idx) = i_times(1.0, static_cast<double>(k.x) * vec.at(0, idx) +
                                      static_cast<double>(k.y) * vec.at(1, idx) +
                                      static_cast<double>(k.z) * vec.at(2, idx));
  });
  return out;
}

SpectralField curl(const SpectralField& vec) {
  require_vector(vec, "curl");
  const Grid& g = vec.grid();
  SpectralField out = SpectralField::vector(g);
  for_each_mode(g, [&](std::size_t idx, int ix, int iy, int iz) {
    const Wavevector k = g.odd_wavevector(ix, iy, iz);
    const Complex vx = vec.at(0, idx), vy = vec.at(1, idx), vz = vec.at(2, idx);
    out.at(0, idx) = i_times(1.0, static_cast<double>(k.y) * vz - static_cast<double>(k.z) * vy);
    out.at(1, idx) = i_times(1.0, static_cast<double>(k.z) * vx - static_cast<double>(k.x) * vz);
    out.at(2, idx) = i_times(1.0, static_cast<double>(k.x) * vy - static_cast<double>(k.y) * vx);
  });
  return out;
}

SpectralField advective_product(const SpectralField& u, const SpectralField& f) {
  require_vector(u, "advective_product");
  const Grid& g = u.grid();
  const std::size_t m = g.physical_size();
  const PhysicalField up = to_physical(u);
  PhysicalField result(g, f.components());
  std::vector<double> deriv(m);
  for (int j = 0; j < 3; ++j) {
    const SpectralField dj = partial(f, j);
    const auto uj = up.component(j);
    for (int c = 0; c < f.components(); ++c) {
      inverse_component(dj, c, deriv);
      auto out = result.component(c);
      for (std::size_t i = 0; i < m; ++i) out[i] += uj[i] * deriv[i];
    }
  }
  SpectralField out = to_spectral(result);
  dealias_inplace(out);
  return out;
}

SpectralField product(const SpectralField& f, const SpectralField& h) {
  if (f.components() != 1 || h.components() != 1) {
    throw std::invalid_argument("product requires scalar fields");
  }
  PhysicalField fp = to_physical(f);
  const PhysicalField hp = to_physical(h);
  auto a = fp.component(0);
  const auto b = hp.component(0);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  SpectralField out = to_spectral(fp);
  dealias_inplace(out);
  return out;
}

SpectralField along(const SpectralField& v, const Vec3& w) {
  require_vector(v, "along");
  SpectralField out = SpectralField::scalar(v.grid());
  const auto x = v.component(0), y = v.component(1), z = v.component(2);
  auto dst = out.component(0);
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = w[0] * x[i] + w[1] * y[i] + w[2] * z[i];
  return out;
}

SpectralField times_vector(const Vec3& w, const SpectralField& f) {
  if (f.components() != 1) throw std::invalid_argument("times_vector requires a scalar field");
  SpectralField out = SpectralField::vector(f.grid());
  const auto src = f.component(0);
  for (int c = 0; c < 3; ++c) {
    auto dst = out.component(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = w[c] * src[i];
  }
  return out;
}

void project_divfree_inplace(SpectralField& b) {
  require_vector(b, "project_divfree");
  const Grid& g = b.grid();
  for_each_mode(g, [&](std::size_t idx, int ix, int iy, int iz) {
    const Wavevector k = g.odd_wavevector(ix, iy, iz);
    const double k2 = static_cast<double>(k.norm2());
    if (k2 == 0.0) return;
    const double kk[3] = {static_cast<double>(k.x), static_cast<double>(k.y),
                          static_cast<double>(k.z)};
    const Complex kb = kk[0] * b.at(0, idx) + kk[1] * b.at(1, idx) + kk[2] * b.at(2, idx);
    for (int c = 0; c < 3; ++c) b.at(c, idx) -= kk[c] * kb / k2;
  });
}

SpectralField project_divfree(const SpectralField& b) {
  SpectralField out = b;
  project_divfree_inplace(out);
  return out;
}

void project_meanzero_inplace(SpectralField& f) {
  for (int c = 0; c < f.components(); ++c) f.at(c, 0) = Complex{};
}

SpectralField project_meanzero(const SpectralField& f) {
  SpectralField out = f;
  project_meanzero_inplace(out);
  return out;
}

void dealias_inplace(SpectralField& f) {
  const Grid& g = f.grid();
  const int cut = g.dealias_cutoff();
  for_each_mode(g, [&](std::size_t idx, int ix, int iy, int iz) {
    const Wavevector k = g.wavevector(ix, iy, iz);
    if (std::abs(k.x) > cut || std::abs(k.y) > cut || k.z > cut) {
      for (int c = 0; c < f.components(); ++c) f.at(c, idx) = Complex{};
    }
  });
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  dealias_inplace(out);
  return out;
}

}  // namespace dmhd
