#include "dmhd/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <new>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace dmhd {
namespace {

struct FftwBuffer {
  explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {
    if (!ptr) throw std::bad_alloc();
  }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  ~FftwBuffer() { fftw_free(ptr); }
  void* ptr;
};

// Plans are made with FFTW_ESTIMATE so the chosen algorithm, and therefore
// every rounding, is the same in every process. They always run on aligned
// per-thread buffers.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  PlanPair() = default;
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;
  ~PlanPair() {
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
  }
};

// FFTW planning is not thread-safe; execution with new-array execute is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(const Grid& g) {
  static std::map<int, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(planner_mutex());
  auto& slot = cache[g.n()];
  if (!slot) {
    slot = std::make_unique<PlanPair>();
    const int n = g.n();
    FftwBuffer real(g.physical_size() * sizeof(double));
    FftwBuffer spec(g.spectral_size() * sizeof(fftw_complex));
    auto* r = static_cast<double*>(real.ptr);
    auto* c = static_cast<fftw_complex*>(spec.ptr);
    slot->forward = fftw_plan_dft_r2c_3d(n, n, n, r, c, FFTW_ESTIMATE);
    slot->inverse = fftw_plan_dft_c2r_3d(n, n, n, c, r, FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
    if (!slot->forward || !slot->inverse) {
      throw std::runtime_error("FFTW planning failed");
    }
  }
  return *slot;
}

struct Scratch {
  int n = 0;
  std::unique_ptr<FftwBuffer> real;
  std::unique_ptr<FftwBuffer> spec;
};

Scratch& scratch_for(const Grid& g) {
  thread_local Scratch s;
  if (s.n != g.n()) {
    s.real = std::make_unique<FftwBuffer>(g.physical_size() * sizeof(double));
    s.spec = std::make_unique<FftwBuffer>(g.spectral_size() * sizeof(fftw_complex));
    s.n = g.n();
  }
  return s;
}

}  // namespace

void inverse_component(const SpectralField& f, int c, std::span<double> out) {
  const Grid& g = f.grid();
  if (out.size() != g.physical_size()) {
    throw std::invalid_argument("inverse_component: output size mismatch");
  }
  const PlanPair& plans = plans_for(g);
  Scratch& s = scratch_for(g);
  auto src = f.component(c);
  auto* spec = static_cast<Complex*>(s.spec->ptr);
  std::copy(src.begin(), src.end(), spec);
  auto* real = static_cast<double*>(s.real->ptr);
  fftw_execute_dft_c2r(plans.inverse, reinterpret_cast<fftw_complex*>(spec), real);
  std::copy(real, real + out.size(), out.begin());
}

void forward_component(std::span<const double> in, SpectralField& f, int c) {
  const Grid& g = f.grid();
  if (in.size() != g.physical_size()) {
    throw std::invalid_argument("forward_component: input size mismatch");
  }
  const PlanPair& plans = plans_for(g);
  Scratch& s = scratch_for(g);
  auto* real = static_cast<double*>(s.real->ptr);
  std::copy(in.begin(), in.end(), real);
  auto* spec = static_cast<Complex*>(s.spec->ptr);
  fftw_execute_dft_r2c(plans.forward, real, reinterpret_cast<fftw_complex*>(spec));
  const double scale = 1.0 / static_cast<double>(g.physical_size());
  auto dst = f.component(c);
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = spec[i] * scale;
}

PhysicalField to_physical(const SpectralField& f) {
  PhysicalField out(f.grid(), f.components());
  for (int c = 0; c < f.components(); ++c) inverse_component(f, c, out.component(c));
  return out;
}

SpectralField to_spectral(const PhysicalField& f) {
  SpectralField out(f.grid(), f.components());
  for (int c = 0; c < f.components(); ++c) forward_component(f.component(c), out, c);
  return out;
}

}  // namespace dmhd
