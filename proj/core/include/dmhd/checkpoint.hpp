#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "dmhd/grid.hpp"
#include "dmhd/state.hpp"

namespace dmhd {

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Binary restart file, all little-endian:
///   "MHDT" | version u32 | n u32 | r f64 | ω 3×f64 | t f64 |
///   7 component arrays (a, u1, u2, u3, b1, b2, b3), each the full n³
///   complex spectrum in row-major (kx, ky, kz) FFT index order as
///   interleaved (re, im) f64.
struct Checkpoint {
  std::uint32_t version = kCheckpointVersion;
  double r = 3.0;
  Vec3 omega{0.0, 0.0, 0.0};
  State state;
};

void write_checkpoint(std::ostream& os, const State& s, double r, const Vec3& omega);
void write_checkpoint(const std::filesystem::path& path, const State& s, double r,
                      const Vec3& omega);

[[nodiscard]] Checkpoint read_checkpoint(std::istream& is);
[[nodiscard]] Checkpoint read_checkpoint(const std::filesystem::path& path);

struct CheckpointHeader {
  std::uint32_t version = 0;
  std::uint32_t n = 0;
  double r = 0.0;
  Vec3 omega{};
  double t = 0.0;
};
[[nodiscard]] CheckpointHeader read_checkpoint_header(const std::filesystem::path& path);

}  // namespace dmhd
