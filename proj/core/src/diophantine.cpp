#include "dmhd/diophantine.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "dmhd/operators.hpp"

namespace dmhd {
namespace {

bool canonical_sign(const Wavevector& k) {
  if (k.x != 0) return k.x > 0;
  if (k.y != 0) return k.y > 0;
  return k.z > 0;
}

auto tie_key(const Wavevector& k) {
  return std::make_tuple(k.norm2(), std::abs(k.z), std::abs(k.y), std::abs(k.x));
}

}  // namespace

DiophantineScan check_condition(const Vec3& omega, double r, int K) {
  if (K < 1) throw std::invalid_argument("lattice radius K must be >= 1");
  if (!(r > 2.0)) throw std::invalid_argument("Diophantine exponent r must exceed 2");

  DiophantineScan best{std::numeric_limits<double>::infinity(), {}};
  bool resonant = false;
  const long K2 = static_cast<long>(K) * K;
  for (int kx = -K; kx <= K; ++kx) {
    for (int ky = -K; ky <= K; ++ky) {
      for (int kz = -K; kz <= K; ++kz) {
        const Wavevector k{kx, ky, kz};
        const long n2 = k.norm2();
        if (n2 == 0 || n2 > K2 || !canonical_sign(k)) continue;
        const double proj = std::abs(dot(omega, k));
        const bool is_zero = proj <= kResonanceTolerance;
        const double value = is_zero ? 0.0 : proj * std::pow(static_cast<double>(n2), 0.5 * r);
        if (resonant && !is_zero) continue;
        const bool better = (is_zero && !resonant) || value < best.c_empirical ||
                            (value == best.c_empirical && tie_key(k) < tie_key(best.witness));
        if (better) {
          best = {value, k};
          resonant = resonant || is_zero;
        }
      }
    }
  }
  return best;
}

BackgroundField make_background(const Vec3& omega, double r, int K) {
  const DiophantineScan scan = check_condition(omega, r, K);
  return BackgroundField{omega, r, scan.c_empirical, K, scan.witness};
}

BackgroundField default_omega(double scale, double r, int K) {
  if (!(scale > 0.0)) throw std::invalid_argument("omega scale must be positive");
  const Vec3 omega{scale * 1.0, scale * std::sqrt(2.0), scale * std::sqrt(3.0)};
  return make_background(omega, r, K);
}

double poincare_loss_ratio(const SpectralField& f, const Vec3& omega, double s, double r) {
  const Grid& g = f.grid();
  double scale = 0.0;
  for (const auto& v : f.data()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw std::domain_error("poincare_loss_ratio: zero field");
  for (int c = 0; c < f.components(); ++c) {
    if (std::abs(f.mean(c)) > 1e-14 * scale) {
      throw std::domain_error("poincare_loss_ratio: field is not mean-zero");
    }
  }
  for_each_mode(g, [&](std::size_t idx, int ix, int iy, int iz) {
    if (idx == 0) return;
    const double proj = std::abs(dot(omega, g.odd_wavevector(ix, iy, iz)));
    if (proj > kResonanceTolerance) return;
    for (int c = 0; c < f.components(); ++c) {
      if (f.at(c, idx) != Complex{}) {
        throw std::domain_error("kernel mode: inequality inapplicable");
      }
    }
  });
  return sobolev_norm(f, s) / sobolev_norm(directional_derivative(f, omega), s + r);
}

double poincare_weight_bound(double r, int K) {
  // |k|^r/(1+|k|²)^{r/2} increases with |k|.
  const double k2 = static_cast<double>(K) * K;
  return std::pow(k2 / (1.0 + k2), 0.5 * r);
}

}  // namespace dmhd
