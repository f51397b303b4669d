#include "dmhd/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dmhd {

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Grid::Grid(int n) : n_(n) {
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument("grid size must be an even integer >= 8, got " + std::to_string(n));
  }
}

double Grid::dx() const { return 2.0 * std::numbers::pi / n_; }

}  // namespace dmhd
