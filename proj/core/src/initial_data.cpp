#include "dmhd/initial_data.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "dmhd/operators.hpp"
#include "dmhd/random_fields.hpp"

namespace dmhd {
namespace {

constexpr double kNormalization = 1e-13;
constexpr int kMaxSweeps = 100;

Vec3 momentum_mean(const State& s) {
  const Grid& g = s.grid();
  Vec3 m{};
  for (int c = 0; c < 3; ++c) {
    double pair = 0.0;
    for_each_mode(g, [&](std::size_t idx, int, int, int iz) {
      pair += g.multiplicity(iz) * (s.a.at(0, idx) * std::conj(s.u.at(c, idx))).real();
    });
    m[c] = s.u.mean(c).real() + pair;
  }
  return m;
}

void normalize(State& s, double epsilon, const Vec3& target) {
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double size = state_norm(s, 4.0);
    if (!(size > 0.0)) throw std::runtime_error("initial data: cannot rescale a zero field");
    s *= epsilon / size;
    // mean(a) = 0, so shifting mean(u) by c moves ∫(1+a)u by exactly c.
    const Vec3 m = momentum_mean(s);
    for (int c = 0; c < 3; ++c) s.u.at(c, 0) += target[c] - m[c];

    const double norm_err = std::abs(state_norm(s, 4.0) - epsilon) / epsilon;
    const Vec3 m2 = momentum_mean(s);
    double mom_err = 0.0;
    for (int c = 0; c < 3; ++c) mom_err = std::max(mom_err, std::abs(m2[c] - target[c]));
    if (norm_err <= kNormalization && mom_err <= kNormalization) return;
  }
  throw std::runtime_error("initial data: normalization did not converge");
}

}  // namespace

Vec3 scenario_omega(const RunConfig& cfg) {
  if (cfg.scenario == Scenario::euler_damping || cfg.scenario == Scenario::single_mode_acoustic) {
    return {0.0, 0.0, 0.0};
  }
  return cfg.omega.resolve();
}

State generate_initial_data(const RunConfig& cfg) {
  cfg.validate();
  const Grid grid(cfg.n);
  State s(grid);

  if (cfg.scenario == Scenario::single_mode_acoustic) {
    s.a.set_mode(0, {1, 0, 0}, 0.5 * cfg.epsilon);
    return s;
  }

  const double k_max = cfg.k_max.value_or(cfg.n / 4.0);
  const double w = cfg.spectral_width;
  Envelope envelope = flat_envelope();
  if (w > 0.0) envelope = [w](double k) { return std::exp(-k * k / (2.0 * w * w)); };

  std::mt19937_64 rng(cfg.seed);
  s.a = random_field(grid, 1, k_max, rng, envelope);
  s.u = random_field(grid, 3, k_max, rng, envelope);
  s.b = random_field(grid, 3, k_max, rng, envelope);
  if (cfg.scenario == Scenario::euler_damping) {
    s.b.set_zero();
  } else {
    project_divfree_inplace(s.b);
  }
  project_meanzero_inplace(s.a);
  project_meanzero_inplace(s.b);

  normalize(s, cfg.epsilon, cfg.mean_momentum);
  return s;
}

}  // namespace dmhd
