#include "dmhd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "dmhd/dynamics.hpp"
#include "dmhd/operators.hpp"
#include "dmhd/random_fields.hpp"
#include "dmhd/transform.hpp"

namespace dmhd {
namespace {

// Σ_{s=0}^{S} |k|^{2s}; at k = 0 only the s = 0 term survives.
double stacked_weight(double k2, int S) {
  double w = 0.0;
  double p = 1.0;
  for (int s = 0; s <= S; ++s) {
    w += p;
    p *= k2;
  }
  return w;
}

double squared_state_norm(const State& s, double order, double density_weight = 1.0) {
  const double na = sobolev_norm(s.a, order);
  const double nu = sobolev_norm(s.u, order);
  const double nb = sobolev_norm(s.b, order);
  return density_weight * na * na + nu * nu + nb * nb;
}

// ∫(1+a)u: mean(a u_c) is the L² pairing of a with u_c, exact spectrally.
Vec3 mean_momentum(const SpectralField& a, const SpectralField& u) {
  const Grid& g = a.grid();
  Vec3 m{};
  for (int c = 0; c < 3; ++c) {
    double pair = 0.0;
    for_each_mode(g, [&](std::size_t idx, int, int, int iz) {
      pair += g.multiplicity(iz) * (a.at(0, idx) * std::conj(u.at(c, idx))).real();
    });
    m[c] = u.mean(c).real() + pair;
  }
  return m;
}

}  // namespace

LyapunovOrders LyapunovOrders::from_r(double r) {
  return {static_cast<int>(std::floor(3.0 * r)), static_cast<int>(std::floor(4.0 * r + 1.0)),
          std::floor(4.0 * r + 2.0)};
}

std::vector<double> default_orders(double r) {
  std::vector<double> out{0.0, 1.0, 2.0, 4.0, std::floor(2.0 * r), std::floor(3.0 * r + 1.0),
                          std::floor(4.0 * r + 2.0)};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double stacked_pairing(const SpectralField& f, const SpectralField& g, int S) {
  if (!(f.grid() == g.grid()) || f.components() != g.components()) {
    throw std::invalid_argument("stacked_pairing: incompatible fields");
  }
  const Grid& grid = f.grid();
  const auto table = radial_table(grid, [S](double k2) { return stacked_weight(k2, S); });
  double sum = 0.0;
  for_each_mode(grid, [&](std::size_t idx, int ix, int iy, int iz) {
    const double w = grid.multiplicity(iz) * table[grid.wavevector(ix, iy, iz).norm2()];
    for (int c = 0; c < f.components(); ++c) {
      sum += w * (f.at(c, idx) * std::conj(g.at(c, idx))).real();
    }
  });
  return sum;
}

CrossTerms cross_terms(const State& s, const Vec3& omega, int S_a, int S_b) {
  CrossTerms out;
  out.density = stacked_pairing(directional_derivative(s.a, omega), along(s.u, omega), S_a);
  out.magnetic = stacked_pairing(s.u, directional_derivative(s.b, omega), S_b);
  return out;
}

double lyapunov(const State& s, const Vec3& omega, double A, double r, double density_weight) {
  const auto ord = LyapunovOrders::from_r(r);
  const CrossTerms ct = cross_terms(s, omega, ord.density_sum, ord.magnetic_sum);
  return A * squared_state_norm(s, ord.energy, density_weight) + ct.density - ct.magnetic;
}

double cross_density_rate(const State& s, const Vec3& omega, double beta, int S_a,
                          const SpectralField* f1, const SpectralField* f2) {
  const SpectralField wa = directional_derivative(s.a, omega);
  const SpectralField uw = along(s.u, omega);

  SpectralField at = -1.0 * divergence(s.u);
  if (f1 != nullptr) at += *f1;
  const SpectralField wb = directional_derivative(along(s.b, omega), omega);
  const SpectralField bw = along(directional_derivative(s.b, omega), omega);

  double rate = stacked_pairing(directional_derivative(at, omega), uw, S_a);
  rate -= beta * stacked_pairing(wa, wa, S_a);
  rate -= stacked_pairing(wa, wb, S_a);
  rate -= stacked_pairing(wa, uw, S_a);
  rate += stacked_pairing(wa, bw, S_a);
  if (f2 != nullptr) rate += stacked_pairing(wa, along(*f2, omega), S_a);
  return rate;
}

DiagnosticsRecord sample_record(const State& s, double dt, const DiagnosticsSettings& settings) {
  DiagnosticsRecord rec;
  rec.t = s.t;
  rec.dt = dt;
  rec.orders = settings.orders;
  for (double order : settings.orders) {
    rec.norm_a.push_back(sobolev_norm(s.a, order));
    rec.norm_u.push_back(sobolev_norm(s.u, order));
    rec.norm_b.push_back(sobolev_norm(s.b, order));
  }

  // Products of at most three dealiased fields are integrated exactly by the
  // grid quadrature, so these means carry no aliasing error.
  const PhysicalField a = to_physical(s.a);
  const PhysicalField u = to_physical(s.u);
  const PhysicalField b = to_physical(s.b);
  const std::size_t np = s.grid().physical_size();
  double kinetic = 0.0;
  double magnetic = 0.0;
  double potential = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    const double rho = 1.0 + a.component(0)[i];
    double u2 = 0.0;
    double b2 = 0.0;
    for (int c = 0; c < 3; ++c) {
      u2 += u.component(c)[i] * u.component(c)[i];
      b2 += b.component(c)[i] * b.component(c)[i];
    }
    kinetic += rho * u2;
    magnetic += b2;
    potential += settings.pressure.potential_energy_density(rho);
  }
  const double inv = 1.0 / static_cast<double>(np);
  rec.kinetic_dissipation = kinetic * inv;
  rec.total_energy = (kinetic + magnetic + potential) * inv;

  rec.mean_a = s.a.mean().real();
  rec.mean_momentum = mean_momentum(s.a, s.u);
  rec.mean_b = s.b.mean_vector();
  rec.div_b_norm = sobolev_norm(divergence(s.b), 0.0);

  const auto ord = LyapunovOrders::from_r(settings.r);
  const CrossTerms ct = cross_terms(s, settings.omega, ord.density_sum, ord.magnetic_sum);
  rec.cross_density = ct.density;
  rec.cross_magnetic = ct.magnetic;
  rec.lyapunov_E = settings.A * squared_state_norm(s, ord.energy, settings.density_weight) +
                   ct.density - ct.magnetic;
  return rec;
}

double energy_residual(const DiagnosticsRecord& prev, const DiagnosticsRecord& next, double floor) {
  const double dt = next.t - prev.t;
  if (!(dt > 0.0)) throw std::invalid_argument("energy_residual: records not increasing in t");
  const double rate = (next.total_energy - prev.total_energy) / dt;
  const double dissipation = prev.kinetic_dissipation + next.kinetic_dissipation;
  const double scale = std::max({prev.total_energy, next.total_energy, floor});
  return std::abs(rate + dissipation) / scale;
}

void fill_energy_residuals(std::span<DiagnosticsRecord> records, double floor) {
  for (std::size_t i = 1; i < records.size(); ++i) {
    records[i].energy_residual = energy_residual(records[i - 1], records[i], floor);
  }
}

MeanLawReport mean_laws_check(std::span<const DiagnosticsRecord> records, double tolerance) {
  if (records.size() < 2) throw std::invalid_argument("mean_laws_check: need at least two records");
  MeanLawReport rep;
  const DiagnosticsRecord& first = records.front();
  const double m0 = norm(first.mean_momentum);
  rep.momentum_relative = m0 > 0.0;
  for (const auto& rec : records) {
    rep.max_drift_mean_a = std::max(rep.max_drift_mean_a, std::abs(rec.mean_a - first.mean_a));
    Vec3 db{};
    Vec3 dm{};
    const double decay = std::exp(-(rec.t - first.t));
    for (int c = 0; c < 3; ++c) {
      db[c] = rec.mean_b[c] - first.mean_b[c];
      dm[c] = rec.mean_momentum[c] - first.mean_momentum[c] * decay;
    }
    rep.max_drift_mean_b = std::max(rep.max_drift_mean_b, norm(db));
    rep.momentum_deviation = std::max(rep.momentum_deviation, norm(dm));
  }
  if (rep.momentum_relative) rep.momentum_deviation /= m0;
  rep.means_constant = rep.max_drift_mean_a <= tolerance && rep.max_drift_mean_b <= tolerance;
  return rep;
}

double fit_decay_exponent(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size() || t.empty()) {
    throw std::invalid_argument("decay fit: mismatched or empty series");
  }
  const double t0 = t.front();
  const double t_end = t.back();
  if ((1.0 + t_end) / (1.0 + t0) < 10.0) throw std::invalid_argument("decay fit: too-short window");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 0.5 * t_end) continue;
    if (!(y[i] > 0.0)) throw std::invalid_argument("decay fit: non-positive norm");
    const double x = std::log1p(t[i]);
    const double v = std::log(y[i]);
    sx += x;
    sy += v;
    sxx += x * x;
    sxy += x * v;
    ++m;
  }
  if (m < 3) throw std::invalid_argument("decay fit: too-short window");
  const double dm = static_cast<double>(m);
  return (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
}

DecayFit decay_fit(std::span<const DiagnosticsRecord> records, double gamma_order, double N_order,
                   double r) {
  if (records.empty()) throw std::invalid_argument("decay fit: no records");
  const auto& orders = records.front().orders;
  const auto it = std::find(orders.begin(), orders.end(), gamma_order);
  if (it == orders.end()) throw std::invalid_argument("decay fit: order not recorded");
  const auto j = static_cast<std::size_t>(it - orders.begin());

  std::vector<double> t;
  std::vector<double> y;
  for (const auto& rec : records) {
    t.push_back(rec.t);
    y.push_back(std::sqrt(rec.norm_a[j] * rec.norm_a[j] + rec.norm_u[j] * rec.norm_u[j] +
                          rec.norm_b[j] * rec.norm_b[j]));
  }

  DecayFit fit;
  fit.fitted_exponent = fit_decay_exponent(t, y);
  const double denom = 2.0 * (2.0 * r + 2.0);
  fit.theoretical_exponent = -3.0 * (N_order - gamma_order) / denom;
  fit.interpolated_exponent = -(N_order - gamma_order) / denom;
  fit.lyapunov_exponent = -(N_order - 4.0 * r - 2.0) / (2.0 * r + 2.0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    fit.bound_constant =
        std::max(fit.bound_constant, y[i] / std::pow(1.0 + t[i], fit.theoretical_exponent));
    if (t[i] >= 0.5 * t.back()) ++fit.points_used;
  }
  return fit;
}

double meanzero_poincare_check(const SpectralField& f) {
  if (std::abs(f.mean(0)) > 0.0 || (f.components() == 3 && norm(f.mean_vector()) > 0.0)) {
    throw std::invalid_argument("poincare check: field is not mean-zero");
  }
  const double num = sobolev_norm(f, 0.0);
  if (num == 0.0) throw std::invalid_argument("poincare check: zero field");
  // ‖∇f‖₀ = ‖Λf‖₀ summed over components.
  return num / sobolev_norm(lambda_pow(f, 1.0), 0.0);
}

WeightedPoincare weighted_poincare(const SpectralField& a, const SpectralField& u, double K) {
  const Vec3 m = mean_momentum(a, u);
  WeightedPoincare out;
  out.lhs = sobolev_norm(u, 0.0);
  out.rhs = norm(m) + K * (1.0 + sobolev_norm(a, 0.0)) * sobolev_norm(lambda_pow(u, 1.0), 0.0);
  return out;
}

double calibrate_lyapunov_A(const Grid& grid, const Vec3& omega, double r, int samples,
                            std::uint64_t seed, double density_weight) {
  if (samples < 1) throw std::invalid_argument("calibrate_lyapunov_A: samples must be positive");
  std::mt19937_64 rng(seed);
  const auto ord = LyapunovOrders::from_r(r);
  const double k_max = grid.dealias_cutoff();
  // E ≥ ‖·‖² is linear in A for a fixed state, so each sample yields a
  // threshold and A must clear the largest one.
  double needed = 0.0;
  for (int i = 0; i < samples; ++i) {
    State s(grid);
    s.a = random_field(grid, 1, k_max, rng);
    s.u = random_field(grid, 3, k_max, rng);
    s.b = project_divfree(random_field(grid, 3, k_max, rng));
    const CrossTerms ct = cross_terms(s, omega, ord.density_sum, ord.magnetic_sum);
    const double full = squared_state_norm(s, ord.energy);
    const double weighted = squared_state_norm(s, ord.energy, density_weight);
    needed = std::max(needed, (full - ct.density + ct.magnetic) / weighted);
  }
  double A = 2.0;
  while (A < needed) A *= 2.0;
  return A;
}

}  // namespace dmhd
