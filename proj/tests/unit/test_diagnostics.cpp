#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "dmhd/diagnostics.hpp"
#include "dmhd/diophantine.hpp"
#include "dmhd/dynamics.hpp"
#include "dmhd/integrator.hpp"
#include "dmhd/operators.hpp"
#include "dmhd/transform.hpp"
#include "oracles.hpp"

using namespace dmhd;

namespace {

const Vec3 kDefault{1.0, std::sqrt(2.0), std::sqrt(3.0)};

State random_state(const Grid& g, double k_max, double amp, std::uint64_t seed) {
  State s(g);
  s.a = amp * oracle::random_field(g, 1, k_max, seed);
  s.u = amp * oracle::random_field(g, 3, k_max, seed + 1);
  s.b = amp * project_divfree(oracle::random_field(g, 3, k_max, seed + 2));
  return s;
}

double stacked_weight(const Wavevector& k, int S) {
  double w = 0.0;
  for (int s = 0; s <= S; ++s) w += std::pow(static_cast<double>(k.norm2()), s);
  return w;
}

// Sums over the whole resolved lattice -n/2 < k_i < n/2 with explicit
// coefficients, independent of the half-spectrum bookkeeping.
template <class F>
double lattice_sum(const Grid& g, F&& term) {
  const int h = g.n() / 2;
  double sum = 0.0;
  for (int x = -h + 1; x < h; ++x)
    for (int y = -h + 1; y < h; ++y)
      for (int z = -h + 1; z < h; ++z) sum += term(Wavevector{x, y, z});
  return sum;
}

CrossTerms cross_oracle(const State& s, const Vec3& w, int Sa, int Sb) {
  const Grid& g = s.grid();
  const Complex I(0.0, 1.0);
  CrossTerms ct;
  ct.density = lattice_sum(g, [&](const Wavevector& k) {
    Complex wu = 0.0;
    for (int c = 0; c < 3; ++c) wu += w[c] * s.u.coeff(c, k);
    return stacked_weight(k, Sa) * (I * dot(w, k) * s.a.coeff(0, k) * std::conj(wu)).real();
  });
  ct.magnetic = lattice_sum(g, [&](const Wavevector& k) {
    double v = 0.0;
    for (int c = 0; c < 3; ++c) v += (s.u.coeff(c, k) * std::conj(I * dot(w, k) * s.b.coeff(c, k))).real();
    return stacked_weight(k, Sb) * v;
  });
  return ct;
}

double squared_norm_oracle(const SpectralField& f, double s) {
  return lattice_sum(f.grid(), [&](const Wavevector& k) {
    double v = 0.0;
    for (int c = 0; c < f.components(); ++c) v += std::norm(f.coeff(c, k));
    return std::pow(1.0 + k.norm2(), s) * v;
  });
}

DiagnosticsRecord synthetic(double t, double y) {
  DiagnosticsRecord r;
  r.t = t;
  r.orders = {0.0, 4.0};
  r.norm_a = {0.0, y};
  r.norm_u = {0.0, 0.0};
  r.norm_b = {0.0, 0.0};
  return r;
}

}  // namespace

TEST(StackedPairing, SingleModes) {
  const Grid g(16);
  SpectralField f = SpectralField::scalar(g);
  f.set_mode(0, {1, 0, 0}, 0.5);  // cos x₁
  EXPECT_NEAR(stacked_pairing(f, f, 3), 4 * 0.5, 1e-15);
  SpectralField h = SpectralField::scalar(g);
  h.set_mode(0, {0, 2, 0}, 0.5);  // cos 2x₂
  EXPECT_NEAR(stacked_pairing(h, h, 2), 0.5 * (1 + 4 + 16), 1e-13);
  EXPECT_EQ(stacked_pairing(f, h, 5), 0.0);
}

TEST(CrossTerms, SingleModeExample) {
  const Grid g(16);
  State s(g);
  s.a.set_mode(0, {1, 0, 0}, 0.5);  // cos x₁
  const double w2 = dot(kDefault, kDefault);
  for (int c = 0; c < 3; ++c) s.u.set_mode(c, {1, 0, 0}, Complex(0.0, -0.5 * kDefault[c] / w2));  // sin x₁ ω/|ω|²
  // ∫(ω·∇)cos x₁ · sin x₁ = −ω₁/2 at every order since |k| = 1.
  const CrossTerms ct = cross_terms(s, kDefault, 9, 13);
  EXPECT_NEAR(ct.density, -10 * 0.5 * kDefault[0], 1e-14);
  EXPECT_EQ(ct.magnetic, 0.0);
}

TEST(CrossTerms, MatchLatticeOracle) {
  const Grid g(8);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const State s = random_state(g, 3.0, 1.0, 10 * seed);
    for (const auto& [Sa, Sb] : {std::pair{0, 0}, std::pair{9, 13}, std::pair{3, 5}}) {
      const CrossTerms got = cross_terms(s, kDefault, Sa, Sb);
      const CrossTerms ref = cross_oracle(s, kDefault, Sa, Sb);
      const double scale = std::pow(3.0 * 3.0, std::max(Sa, Sb));
      EXPECT_NEAR(got.density, ref.density, 1e-12 * scale);
      EXPECT_NEAR(got.magnetic, ref.magnetic, 1e-12 * scale);
    }
  }
}

TEST(Lyapunov, ComposesFromParts) {
  const Grid g(8);
  const State s = random_state(g, 3.0, 1e-3, 4);
  const double A = 8.0, r = 3.0;
  const CrossTerms ref = cross_oracle(s, kDefault, 9, 13);
  for (double w : {1.0, 3.0}) {
    const double expected = A * (w * squared_norm_oracle(s.a, 14.0) + squared_norm_oracle(s.u, 14.0) +
                                 squared_norm_oracle(s.b, 14.0)) +
                            ref.density - ref.magnetic;
    EXPECT_NEAR(lyapunov(s, kDefault, A, r, w), expected, 1e-11 * std::abs(expected));
  }
  EXPECT_EQ(lyapunov(equilibrium(g), kDefault, A, r), 0.0);
  // Degree-2 homogeneity.
  EXPECT_NEAR(lyapunov(scaled(s, 3.0), kDefault, A, r), 9.0 * lyapunov(s, kDefault, A, r),
              1e-12 * 9.0 * lyapunov(s, kDefault, A, r));
}

TEST(Lyapunov, OrdersFromExponent) {
  const auto o = LyapunovOrders::from_r(3.0);
  EXPECT_EQ(o.density_sum, 9);
  EXPECT_EQ(o.magnetic_sum, 13);
  EXPECT_EQ(o.energy, 14.0);
  const auto f = LyapunovOrders::from_r(2.5);
  EXPECT_EQ(f.density_sum, 7);
  EXPECT_EQ(f.magnetic_sum, 11);
  EXPECT_EQ(f.energy, 12.0);
  EXPECT_EQ(default_orders(3.0), (std::vector<double>{0, 1, 2, 4, 6, 10, 14}));
  EXPECT_EQ(default_orders(1.0), (std::vector<double>{0, 1, 2, 4, 6}));
}

TEST(Lyapunov, CalibratedConstantDominatesNorm) {
  const Grid g(16);
  const double A = calibrate_lyapunov_A(g, kDefault, 3.0, 50, 99);
  EXPECT_GE(A, 2.0);
  EXPECT_EQ(std::exp2(std::round(std::log2(A))), A);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const State s = random_state(g, g.dealias_cutoff(), 1.0, 500 + 3 * seed);
    const double norm2 = std::pow(state_norm(s, 14.0), 2);
    EXPECT_GE(lyapunov(s, kDefault, A, 3.0), norm2 * (1.0 - 1e-12));
  }
  EXPECT_THROW((void)calibrate_lyapunov_A(g, kDefault, 3.0, 0), std::invalid_argument);
}

TEST(SampleRecord, ExplicitState) {
  const Grid g(16);
  const double eps = 1e-2;
  State s(g);
  s.a.set_mode(0, {1, 0, 0}, 0.5 * eps);           // ε cos x₁
  s.u.set_mode(1, {1, 0, 0}, 0.5 * eps);           // ε cos x₁ e₂
  s.u.at(0, 0) = 0.25;                             // mean velocity e₁/4
  s.b.set_mode(2, {0, 1, 0}, Complex(0.0, -eps));  // 2ε sin x₂ e₃
  DiagnosticsSettings settings;
  settings.omega = kDefault;
  const DiagnosticsRecord rec = sample_record(s, 0.01, settings);

  // ∫ρ|u|² = 1/16 + ε²/2 + ∫ε cos x₁·(ε² cos² x₁) = 1/16 + ε²/2.
  EXPECT_NEAR(rec.kinetic_dissipation, 1.0 / 16.0 + eps * eps / 2.0, 1e-14);
  // Magnetic 2ε², potential 2∫a² = ε².
  EXPECT_NEAR(rec.total_energy, 1.0 / 16.0 + eps * eps / 2.0 + 2.0 * eps * eps + eps * eps, 1e-14);
  EXPECT_EQ(rec.mean_a, 0.0);
  // ∫(1+a)u = (1/4 + 0, ε²/2, 0).
  EXPECT_NEAR(rec.mean_momentum[0], 0.25, 1e-17);
  EXPECT_NEAR(rec.mean_momentum[1], eps * eps / 2.0, 1e-17);
  EXPECT_EQ(rec.mean_momentum[2], 0.0);
  EXPECT_EQ(rec.div_b_norm, 0.0);
  EXPECT_EQ(rec.orders, default_orders(3.0));
  EXPECT_NEAR(rec.norm_b[3], std::sqrt(2.0) * eps * 4.0, 1e-15);  // (1+1)^4 weight → ‖·‖ scales by 2²
  EXPECT_EQ(rec.dt, 0.01);
}

TEST(EnergyResidual, Examples) {
  DiagnosticsRecord p, q;
  p.t = 0.0;
  q.t = 0.1;
  EXPECT_EQ(energy_residual(p, q, 1e-30), 0.0);
  p.total_energy = 1.0;
  q.total_energy = 0.9;
  p.kinetic_dissipation = q.kinetic_dissipation = 0.5;
  EXPECT_NEAR(energy_residual(p, q), 0.0, 1e-15);
  p.kinetic_dissipation = q.kinetic_dissipation = 0.4;
  EXPECT_NEAR(energy_residual(p, q), 0.2, 1e-14);
  EXPECT_THROW((void)energy_residual(q, p), std::invalid_argument);

  std::vector<DiagnosticsRecord> recs{p, q};
  fill_energy_residuals(recs);
  EXPECT_EQ(recs[0].energy_residual, 0.0);
  EXPECT_NEAR(recs[1].energy_residual, 0.2, 1e-14);
}

TEST(EnergyResidual, SecondOrderInSampleInterval) {
  const Grid g(16);
  State s0 = random_state(g, 4.0, 1.0, 77);
  s0.a.at(0, 0) = 0.0;
  s0 = scaled(s0, 1e-3 / state_norm(s0, 4.0));
  const PressureLaw pl(2.0);
  DiagnosticsSettings settings;
  settings.omega = kDefault;
  settings.orders = {0.0};
  std::vector<double> maxima;
  for (double h : {0.02, 0.01, 0.005}) {
    IntegrationPlan plan;
    plan.t_final = 0.2;
    plan.sample_dt = h;
    plan.dt = h;
    std::vector<DiagnosticsRecord> recs;
    (void)integrate(s0, plan, [&](const State& x) { return nonlinear_rhs(x, kDefault, pl); },
                    [&](const State& x, double dt, long) { recs.push_back(sample_record(x, dt, settings)); });
    fill_energy_residuals(recs);
    double m = 0.0;
    for (const auto& r : recs) m = std::max(m, r.energy_residual);
    maxima.push_back(m);
  }
  EXPECT_NEAR(maxima[0] / maxima[1], 4.0, 0.3);
  EXPECT_NEAR(maxima[1] / maxima[2], 4.0, 0.3);
}

TEST(MeanLaws, Report) {
  std::vector<DiagnosticsRecord> recs;
  for (double t : {0.0, 0.5, 1.0}) {
    DiagnosticsRecord r;
    r.t = t;
    r.mean_momentum = {2.0 * std::exp(-t), 0.0, 0.0};
    recs.push_back(r);
  }
  auto rep = mean_laws_check(recs);
  EXPECT_TRUE(rep.means_constant);
  EXPECT_TRUE(rep.momentum_relative);
  EXPECT_LT(rep.momentum_deviation, 1e-16);

  recs[1].mean_momentum[0] += 2e-6;
  recs[2].mean_a = 1e-11;
  rep = mean_laws_check(recs);
  EXPECT_NEAR(rep.momentum_deviation, 1e-6, 1e-15);
  EXPECT_NEAR(rep.max_drift_mean_a, 1e-11, 1e-20);
  EXPECT_FALSE(rep.means_constant);

  for (auto& r : recs) r.mean_momentum = {0.0, 0.0, 0.0};
  recs[2].mean_momentum[1] = 3e-13;
  rep = mean_laws_check(recs);
  EXPECT_FALSE(rep.momentum_relative);
  EXPECT_NEAR(rep.momentum_deviation, 3e-13, 1e-25);
}

TEST(DecayFit, SyntheticSeries) {
  std::vector<DiagnosticsRecord> flat, power;
  for (int i = 0; i <= 200; ++i) {
    const double t = 0.1 * i;
    flat.push_back(synthetic(t, 0.7));
    power.push_back(synthetic(t, std::pow(1.0 + t, -2.0)));
  }
  EXPECT_NEAR(decay_fit(flat, 4.0, 22.0, 3.0).fitted_exponent, 0.0, 1e-12);
  const DecayFit fit = decay_fit(power, 4.0, 22.0, 3.0);
  EXPECT_NEAR(fit.fitted_exponent, -2.0, 1e-6);
  EXPECT_DOUBLE_EQ(fit.theoretical_exponent, -3.0 * 18.0 / 16.0);
  EXPECT_DOUBLE_EQ(fit.interpolated_exponent, -18.0 / 16.0);
  EXPECT_DOUBLE_EQ(fit.lyapunov_exponent, -8.0 / 8.0);
  EXPECT_EQ(fit.points_used, 101u);
  EXPECT_GE(fit.bound_constant, 1.0);

  std::vector<DiagnosticsRecord> shorter(power.begin(), power.begin() + 50);  // t ≤ 4.9
  try {
    (void)decay_fit(shorter, 4.0, 22.0, 3.0);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("too-short window"), std::string::npos);
  }
  EXPECT_THROW((void)decay_fit(power, 3.0, 22.0, 3.0), std::invalid_argument);
}

TEST(Poincare, Examples) {
  const Grid g(16);
  SpectralField f = SpectralField::scalar(g);
  f.set_mode(0, {1, 0, 0}, 0.5);
  EXPECT_EQ(meanzero_poincare_check(f), 1.0);
  SpectralField h = SpectralField::scalar(g);
  h.set_mode(0, {0, 3, 0}, 0.5);
  EXPECT_NEAR(meanzero_poincare_check(h), 1.0 / 3.0, 1e-15);
  EXPECT_THROW((void)meanzero_poincare_check(SpectralField::scalar(g)), std::invalid_argument);
  f.at(0, 0) = 0.1;
  EXPECT_THROW((void)meanzero_poincare_check(f), std::invalid_argument);
}

TEST(Poincare, RandomFieldsBoundedByOne) {
  const Grid g(16);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SpectralField f = oracle::random_field(g, seed % 2 ? 3 : 1, 5.0, 1000 + seed);
    EXPECT_LE(meanzero_poincare_check(f), 1.0);
  }
}

TEST(Poincare, WeightedVariant) {
  const Grid g(16);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SpectralField a = oracle::random_field(g, 1, 4.0, 2000 + seed);
    a *= 0.9 / to_physical(a).max_abs();  // keeps 1 + a positive
    SpectralField u = oracle::random_field(g, 3, 4.0, 3000 + seed);
    u.at(seed % 3, 0) = 0.5;
    const WeightedPoincare wp = weighted_poincare(a, u);
    EXPECT_LE(wp.lhs, wp.rhs);
  }
  SpectralField a = SpectralField::scalar(g);
  SpectralField u = SpectralField::vector(g);
  u.at(0, 0) = 2.0;
  const WeightedPoincare c = weighted_poincare(a, u, 5.0);
  EXPECT_EQ(c.lhs, 2.0);
  EXPECT_EQ(c.rhs, 2.0);
}

TEST(CrossIdentity, MatchesFiniteDifferenceAlongLinearizedFlow) {
  const Grid g(16);
  State s0 = random_state(g, 4.0, 1e-3, 123);
  s0.a.at(0, 0) = 0.0;
  const double beta = 2.0;
  const int Sa = 9;
  const RightHandSide rhs = [&](const State& x) { return linearized_rhs(x, kDefault, beta); };
  const double rate = cross_density_rate(s0, kDefault, beta, Sa);
  std::vector<double> err;
  for (double h : {0.01, 0.005, 0.0025}) {
    const int fine = 20;
    State fwd = s0, bwd = s0;
    for (int i = 0; i < fine; ++i) {
      fwd = rk4_step(fwd, h / fine, rhs);
      bwd = rk4_step(bwd, -h / fine, rhs);
    }
    const double fd = (cross_terms(fwd, kDefault, Sa, 0).density - cross_terms(bwd, kDefault, Sa, 0).density) / (2 * h);
    err.push_back(std::abs(fd - rate));
  }
  // Central differences carry an O(h²) error whose constant is large at
  // these stacked orders; the identity shows in the convergence rate.
  EXPECT_LT(err[2], 1e-3 * std::abs(rate));
  EXPECT_NEAR(err[0] / err[1], 4.0, 0.2);
  EXPECT_NEAR(err[1] / err[2], 4.0, 0.2);
}

TEST(CrossIdentity, RemaindersEnterLinearly) {
  const Grid g(8);
  const State s = random_state(g, 3.0, 1e-2, 321);
  const State d = nonlinear_rhs(s, kDefault, PressureLaw(2.0));
  const auto rem = nonlinear_remainders(s, d, kDefault, 2.0);
  // With the remainders the identity is the exact derivative along the
  // nonlinear vector field: d/dt cross = pairing of the time derivatives.
  const SpectralField dwu = along(d.u, kDefault);
  const SpectralField wu = along(s.u, kDefault);
  const double exact = stacked_pairing(directional_derivative(d.a, kDefault), wu, 9) +
                       stacked_pairing(directional_derivative(s.a, kDefault), dwu, 9);
  const double got = cross_density_rate(s, kDefault, 2.0, 9, &rem.f1, &rem.f2);
  EXPECT_NEAR(got, exact, 1e-10 * std::abs(exact));
}
