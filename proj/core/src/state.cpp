#include "dmhd/state.hpp"

#include <cmath>

#include "dmhd/operators.hpp"

namespace dmhd {

State& State::operator+=(const State& other) {
  a += other.a;
  u += other.u;
  b += other.b;
  return *this;
}

State& State::operator*=(double s) {
  a *= s;
  u *= s;
  b *= s;
  return *this;
}

State& State::axpy(double s, const State& other) {
  a.axpy(s, other.a);
  u.axpy(s, other.u);
  b.axpy(s, other.b);
  return *this;
}

State equilibrium(Grid grid) { return State(grid); }

State scaled(const State& s, double factor) {
  State out = s;
  out.a *= factor;
  out.u *= factor;
  out.b *= factor;
  return out;
}

double state_norm(const State& s, double order) {
  const double na = sobolev_norm(s.a, order);
  const double nu = sobolev_norm(s.u, order);
  const double nb = sobolev_norm(s.b, order);
  return std::sqrt(na * na + nu * nu + nb * nb);
}

}  // namespace dmhd
