// Serial reference kernels against their OpenMP versions.
// Range argument: spatial intervals n (time levels scale to keep r <= 0.4).

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bkopt/kernels.hpp"
#include "bkopt/pde.hpp"
#include "bkopt/quadrature.hpp"

using namespace bkopt;
using kernels::Exec;

namespace {

ScenarioSpec spec_for(int n) {
  ScenarioSpec spec;
  const double T = 1.0;
  int m = static_cast<int>(T * n * n / 0.4) + 1;
  m += m % 2;
  spec.grid = Grid(n, m, T);
  spec.c = 10.0;
  return spec;
}

const Theta kTheta{-1.0775, 0.5966};

template <Exec E>
void BM_StateInterior(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  std::vector<double> prev(n + 1, 1.0), next(n + 1, 0.0);
  for (std::size_t i = 0; i <= n; ++i) prev[i] = std::sin(std::numbers::pi * static_cast<double>(i) / n);
  const kernels::Stencil s{0.2, 0.4};
  for (auto _ : st) {
    kernels::state_interior(prev, next, s, E);
    benchmark::DoNotOptimize(next.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(n));
}

template <Exec E>
void BM_SampleCharacteristic(benchmark::State& st) {
  const auto count = static_cast<std::size_t>(st.range(0));
  std::vector<double> alpha(count), out(count);
  for (std::size_t k = 0; k < count; ++k) alpha[k] = 40.0 * static_cast<double>(k) / count;
  for (auto _ : st) {
    kernels::sample_characteristic(kTheta, alpha, out, E);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(count));
}

template <Exec E>
void BM_SliceSimpson(benchmark::State& st) {
  const auto spec = spec_for(static_cast<int>(st.range(0)));
  const StateSolution sol = solve_state(spec, kTheta, Exec::Serial);
  std::vector<double> phi(static_cast<std::size_t>(spec.grid.m() + 1));
  for (auto _ : st) {
    kernels::slice_simpson(sol.y, phi, E);
    benchmark::DoNotOptimize(phi.data());
  }
}

template <Exec E>
void BM_Simpson2D(benchmark::State& st) {
  const auto spec = spec_for(static_cast<int>(st.range(0)));
  const StateSolution sol = solve_state(spec, kTheta, Exec::Serial);
  for (auto _ : st) benchmark::DoNotOptimize(simpson_2d(sol.y, E));
}

template <Exec E>
void BM_StateSolve(benchmark::State& st) {
  const auto spec = spec_for(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    const StateSolution sol = solve_state(spec, kTheta, E);
    benchmark::DoNotOptimize(sol.u.data());
  }
}

template <Exec E>
void BM_CostateSolve(benchmark::State& st) {
  const auto spec = spec_for(static_cast<int>(st.range(0)));
  const StateSolution sol = solve_state(spec, kTheta, Exec::Serial);
  for (auto _ : st) {
    const CostateSolution v = solve_costate(spec, kTheta, sol, E);
    benchmark::DoNotOptimize(&v);
  }
}

}  // namespace

BENCHMARK_TEMPLATE(BM_StateInterior, Exec::Serial)->RangeMultiplier(16)->Range(64, 1 << 16);
BENCHMARK_TEMPLATE(BM_StateInterior, Exec::Parallel)->RangeMultiplier(16)->Range(64, 1 << 16);
BENCHMARK_TEMPLATE(BM_SampleCharacteristic, Exec::Serial)->Arg(4096)->Arg(1 << 16);
BENCHMARK_TEMPLATE(BM_SampleCharacteristic, Exec::Parallel)->Arg(4096)->Arg(1 << 16);
BENCHMARK_TEMPLATE(BM_SliceSimpson, Exec::Serial)->Arg(14)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_SliceSimpson, Exec::Parallel)->Arg(14)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_Simpson2D, Exec::Serial)->Arg(14)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_Simpson2D, Exec::Parallel)->Arg(14)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_StateSolve, Exec::Serial)->Arg(14)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_StateSolve, Exec::Parallel)->Arg(14)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_CostateSolve, Exec::Serial)->Arg(14)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_CostateSolve, Exec::Parallel)->Arg(14)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
