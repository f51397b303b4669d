#include "dmhd/checkpoint.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace dmhd {
namespace {

constexpr std::array<char, 4> kMagic{'M', 'H', 'D', 'T'};

void put_u32(std::ostream& os, std::uint32_t v) {
  std::array<char, 4> b{};
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFFu);
  os.write(b.data(), b.size());
}

void put_f64(std::ostream& os, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xFFu);
  os.write(b.data(), b.size());
}

void read_exact(std::istream& is, char* dst, std::size_t n) {
  if (!is.read(dst, static_cast<std::streamsize>(n))) {
    throw std::runtime_error("checkpoint: truncated file");
  }
}

std::uint32_t get_u32(std::istream& is) {
  std::array<unsigned char, 4> b{};
  read_exact(is, reinterpret_cast<char*>(b.data()), b.size());
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is) {
  std::array<unsigned char, 8> b{};
  read_exact(is, reinterpret_cast<char*>(b.data()), b.size());
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

// Full-spectrum value at FFT indices (ix, iy, iz), iz in [0, n).
Complex full_coeff(const SpectralField& f, int c, int ix, int iy, int iz) {
  const Grid& g = f.grid();
  const int n = g.n();
  if (iz < g.nz()) return f.at(c, g.flat(ix, iy, iz));
  return std::conj(f.at(c, g.flat((n - ix) % n, (n - iy) % n, n - iz)));
}

void write_field(std::ostream& os, const SpectralField& f, int c) {
  const int n = f.grid().n();
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      for (int iz = 0; iz < n; ++iz) {
        const Complex v = full_coeff(f, c, ix, iy, iz);
        put_f64(os, v.real());
        put_f64(os, v.imag());
      }
    }
  }
}

void read_field(std::istream& is, SpectralField& f, int c) {
  const Grid& g = f.grid();
  const int n = g.n();
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      for (int iz = 0; iz < n; ++iz) {
        const double re = get_f64(is);
        const double im = get_f64(is);
        if (iz < g.nz()) f.at(c, g.flat(ix, iy, iz)) = Complex(re, im);
      }
    }
  }
}

CheckpointHeader read_header(std::istream& is) {
  std::array<char, 4> magic{};
  read_exact(is, magic.data(), magic.size());
  if (magic != kMagic) throw std::runtime_error("checkpoint: bad magic");
  CheckpointHeader h;
  h.version = get_u32(is);
  if (h.version != kCheckpointVersion) {
    throw std::runtime_error("checkpoint: unsupported version " + std::to_string(h.version));
  }
  h.n = get_u32(is);
  h.r = get_f64(is);
  for (auto& w : h.omega) w = get_f64(is);
  h.t = get_f64(is);
  return h;
}

}  // namespace

void write_checkpoint(std::ostream& os, const State& s, double r, const Vec3& omega) {
  os.write(kMagic.data(), kMagic.size());
  put_u32(os, kCheckpointVersion);
  put_u32(os, static_cast<std::uint32_t>(s.grid().n()));
  put_f64(os, r);
  for (double w : omega) put_f64(os, w);
  put_f64(os, s.t);
  write_field(os, s.a, 0);
  for (int c = 0; c < 3; ++c) write_field(os, s.u, c);
  for (int c = 0; c < 3; ++c) write_field(os, s.b, c);
  if (!os) throw std::runtime_error("checkpoint: write failed");
}

void write_checkpoint(const std::filesystem::path& path, const State& s, double r,
                      const Vec3& omega) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("checkpoint: cannot open " + path.string());
  write_checkpoint(os, s, r, omega);
}

Checkpoint read_checkpoint(std::istream& is) {
  const CheckpointHeader h = read_header(is);
  State s{Grid(static_cast<int>(h.n))};
  s.t = h.t;
  read_field(is, s.a, 0);
  for (int c = 0; c < 3; ++c) read_field(is, s.u, c);
  for (int c = 0; c < 3; ++c) read_field(is, s.b, c);
  return Checkpoint{h.version, h.r, h.omega, std::move(s)};
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("checkpoint: cannot open " + path.string());
  return read_checkpoint(is);
}

CheckpointHeader read_checkpoint_header(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("checkpoint: cannot open " + path.string());
  return read_header(is);
}

}  // namespace dmhd
