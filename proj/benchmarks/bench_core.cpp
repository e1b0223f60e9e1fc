#include <benchmark/benchmark.h>

#include <vector>

#include "spinalias/aliasing.hpp"
#include "spinalias/fieldsim.hpp"
#include "spinalias/sampling.hpp"
#include "spinalias/specialfn.hpp"
#include "spinalias/spectrum.hpp"

using namespace spinalias;

static void BM_WignerD(benchmark::State& state) {
  const int ell = static_cast<int>(state.range(0));
  for (auto _ : state) {
    double acc = 0.0;
    for (int m = -ell; m <= ell; ++m) {
      acc += wigner_d({ell, m, 2}, 0.7);
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * (2 * ell + 1));
}
BENCHMARK(BM_WignerD)->Arg(8)->Arg(32)->Arg(128);

static void BM_GaussNodes(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gauss_nodes(n, 2.0, 2.0));
  }
}
BENCHMARK(BM_GaussNodes)->Arg(8)->Arg(64)->Arg(256);

static void BM_Synthesize(benchmark::State& state) {
  const int L0 = static_cast<int>(state.range(0));
  const SamplingGrid grid = build_grid_gauss(L0 + 3, 2, L0 + 1);
  const SpinCoefficients a =
      sample_gaussian_coeffs(AngularPowerSpectrum::flat(2, L0, 0.5, 0.5), L0, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize(a, grid));
  }
}
BENCHMARK(BM_Synthesize)->Arg(8)->Arg(16)->Arg(32);

static void BM_Analyze(benchmark::State& state) {
  const int L0 = static_cast<int>(state.range(0));
  const SamplingGrid grid = build_grid_gauss(L0 + 3, 2, L0 + 1);
  const FieldSamples field = synthesize(
      sample_gaussian_coeffs(AngularPowerSpectrum::flat(2, L0, 0.5, 0.5), L0, 1), grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze(field, 2, L0));
  }
}
BENCHMARK(BM_Analyze)->Arg(8)->Arg(16)->Arg(32);

static void BM_EnumerateAliases(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const SamplingGrid grid = build_grid_gauss(N, 2, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_aliases({2, 0, 2}, grid));
  }
}
BENCHMARK(BM_EnumerateAliases)->Arg(6)->Arg(12)->Arg(24);

static void BM_AliasedSpectrum(benchmark::State& state) {
  const AngularPowerSpectrum spec = AngularPowerSpectrum::flat(2, 40, 0.5, 0.5);
  const SamplingGrid grid = build_grid_gauss(10, 2, 1);
  const std::vector<int> ells{2, 3, 4, 5, 6, 7, 8};
  for (auto _ : state) {
    benchmark::DoNotOptimize(aliased_spectrum(grid, spec, ells));
  }
}
BENCHMARK(BM_AliasedSpectrum);
BENCHMARK_MAIN();
