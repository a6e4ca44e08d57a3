#include <benchmark/benchmark.h>

#include "xjulia/dynamics.hpp"
#include "xjulia/exceptional.hpp"
#include "xjulia/jacobi.hpp"
#include "xjulia/rootfind.hpp"
#include "xjulia/zeros.hpp"

using namespace xjulia;

namespace {

const ExceptionalFamily& family() {
  static const ExceptionalFamily fam(make_x1_preset(kPresetAlpha, kPresetBeta));
  return fam;
}

void BM_JacobiEval(benchmark::State& state) {
  const JacobiParams p(0.3, -0.2);
  const int n = static_cast<int>(state.range(0));
  cplx z{0.3, 0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_orthonormal_jacobi(p, n, z));
    z += 1e-9;
  }
}
BENCHMARK(BM_JacobiEval)->Arg(10)->Arg(50);

void BM_GaussRule(benchmark::State& state) {
  const JacobiParams p(1.0025, -0.4975);
  for (auto _ : state) benchmark::DoNotOptimize(gauss_jacobi_rule(p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GaussRule)->Arg(50)->Arg(200);

void BM_ExceptionalFamily(benchmark::State& state) {
  const auto data = make_x1_preset(kPresetAlpha, kPresetBeta);
  for (auto _ : state) benchmark::DoNotOptimize(ExceptionalFamily(data));
}
BENCHMARK(BM_ExceptionalFamily)->Unit(benchmark::kMillisecond);

void BM_ClassifyZeros(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classify_zeros(family(), n));
}
BENCHMARK(BM_ClassifyZeros)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_PreimageSolve(benchmark::State& state) {
  const auto p = family().chebyshev_coeffs(static_cast<int>(state.range(0)));
  const auto guesses = roots(p);
  double w = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(roots(p.minus_constant(w), guesses));
    w = -w;
  }
}
BENCHMARK(BM_PreimageSolve)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_BrolinSample(benchmark::State& state) {
  const auto e = escape_radius(family().chebyshev_coeffs(static_cast<int>(state.range(0))));
  BrolinOptions opts;
  opts.samples = 2000;
  opts.burn_in = 20;
  for (auto _ : state) benchmark::DoNotOptimize(brolin_sample(e, opts));
  state.SetItemsProcessed(state.iterations() * 2020);
}
BENCHMARK(BM_BrolinSample)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_EscapeRaster(benchmark::State& state) {
  const auto e = escape_radius(family().chebyshev_coeffs(20));
  GridSpec g;
  g.half_width = 1.5;
  g.resolution = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(escape_raster(e, g));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_EscapeRaster)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
