#include <benchmark/benchmark.h>

#include <random>

#include "dmhd/diagnostics.hpp"
#include "dmhd/diophantine.hpp"
#include "dmhd/dynamics.hpp"
#include "dmhd/integrator.hpp"
#include "dmhd/operators.hpp"
#include "dmhd/random_fields.hpp"
#include "dmhd/transform.hpp"

namespace {

dmhd::State small_state(int n) {
  const dmhd::Grid g(n);
  std::mt19937_64 rng(7);
  dmhd::State s(g);
  s.a = 1e-3 * dmhd::random_field(g, 1, n / 4.0, rng);
  s.u = 1e-3 * dmhd::random_field(g, 3, n / 4.0, rng);
  s.b = 1e-3 * dmhd::project_divfree(dmhd::random_field(g, 3, n / 4.0, rng));
  // The number of modes grows like n³, so normalize to a fixed H⁴ size.
  return dmhd::scaled(s, 1e-3 / dmhd::state_norm(s, 4.0));
}

const dmhd::Vec3 kOmega{1.0, 1.4142135623730951, 1.7320508075688772};

void BM_RoundTrip(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const dmhd::Grid g(n);
  std::mt19937_64 rng(1);
  const auto f = dmhd::random_field(g, 1, n / 3.0, rng);
  for (auto _ : st) {
    auto back = dmhd::to_spectral(dmhd::to_physical(f));
    benchmark::DoNotOptimize(back.data().data());
  }
}
BENCHMARK(BM_RoundTrip)->Arg(16)->Arg(32)->Arg(64);

void BM_NonlinearRhs(benchmark::State& st) {
  const auto s = small_state(static_cast<int>(st.range(0)));
  const dmhd::PressureLaw pl;
  for (auto _ : st) {
    auto d = dmhd::nonlinear_rhs(s, kOmega, pl);
    benchmark::DoNotOptimize(d.a.data().data());
  }
}
BENCHMARK(BM_NonlinearRhs)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_LinearizedRhs(benchmark::State& st) {
  const auto s = small_state(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto d = dmhd::linearized_rhs(s, kOmega, 2.0);
    benchmark::DoNotOptimize(d.a.data().data());
  }
}
BENCHMARK(BM_LinearizedRhs)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Rk4Nonlinear(benchmark::State& st) {
  const auto s = small_state(32);
  const dmhd::PressureLaw pl;
  const dmhd::RightHandSide rhs = [&](const dmhd::State& x) {
    return dmhd::nonlinear_rhs(x, kOmega, pl);
  };
  for (auto _ : st) {
    auto next = dmhd::rk4_step(s, 1e-3, rhs);
    dmhd::reproject(next);
    benchmark::DoNotOptimize(next.a.data().data());
  }
}
BENCHMARK(BM_Rk4Nonlinear)->Unit(benchmark::kMillisecond);

void BM_SampleRecord(benchmark::State& st) {
  const auto s = small_state(32);
  dmhd::DiagnosticsSettings settings;
  settings.omega = kOmega;
  for (auto _ : st) {
    auto rec = dmhd::sample_record(s, 1e-3, settings);
    benchmark::DoNotOptimize(rec.lyapunov_E);
  }
}
BENCHMARK(BM_SampleRecord)->Unit(benchmark::kMillisecond);

void BM_Lyapunov(benchmark::State& st) {
  const auto s = small_state(32);
  for (auto _ : st) benchmark::DoNotOptimize(dmhd::lyapunov(s, kOmega, 2.0, 3.0));
}
BENCHMARK(BM_Lyapunov)->Unit(benchmark::kMillisecond);

void BM_DiophantineScan(benchmark::State& st) {
  const int K = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(dmhd::check_condition(kOmega, 3.0, K).c_empirical);
}
BENCHMARK(BM_DiophantineScan)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
