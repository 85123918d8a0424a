#include <benchmark/benchmark.h>

#include <random>

#include "framelet/design.hpp"
#include "framelet/frame_verify.hpp"
#include "framelet/mask_analysis.hpp"
#include "framelet/trig_interp.hpp"
#include "framelet/uep_complete.hpp"

using namespace framelet;

namespace {

TrigPoly random_mask(int degree) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<cplx> c(static_cast<std::size_t>(degree + 1));
  for (auto& v : c) v = {u(gen), u(gen)};
  return TrigPoly(0, c);
}

const DesignResult& designed() {
  static const DesignResult r = design_mask({builtin_target("interior-roots"), 0.05, std::nullopt, 65536, std::nullopt});
  return r;
}

void BM_EvalOnGrid(benchmark::State& state) {
  const auto p = random_mask(static_cast<int>(state.range(0)));
  const auto grid = TorusGrid::for_degree(p.degree());
  for (auto _ : state) benchmark::DoNotOptimize(eval_on_grid(p, grid));
}
BENCHMARK(BM_EvalOnGrid)->RangeMultiplier(4)->Range(16, 4096);

void BM_CertifiedSubQmf(benchmark::State& state) {
  const auto s = subqmf_symbol(random_mask(static_cast<int>(state.range(0))));
  const auto grid = TorusGrid::for_degree(s.degree());
  for (auto _ : state) benchmark::DoNotOptimize(grid_extremum(s, grid));
}
BENCHMARK(BM_CertifiedSubQmf)->RangeMultiplier(4)->Range(16, 1024);

void BM_InterpolateH(benchmark::State& state) {
  const auto& f3 = designed().f3;
  const int j = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(interpolate_H(f3, j));
}
BENCHMARK(BM_InterpolateH)->RangeMultiplier(4)->Range(16, 4096);

void BM_UnitCircleRoots(benchmark::State& state) {
  const auto p = random_mask(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(unit_circle_roots(p));
}
BENCHMARK(BM_UnitCircleRoots)->RangeMultiplier(2)->Range(16, 256);

void BM_FejerRiesz(benchmark::State& state) {
  const auto q = random_mask(static_cast<int>(state.range(0)));
  const auto p = abs_squared(q) + TrigPoly::constant(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(fejer_riesz(p));
}
BENCHMARK(BM_FejerRiesz)->RangeMultiplier(2)->Range(8, 128);

void BM_WaveletMasks(benchmark::State& state) {
  const auto& m0 = designed().mask;
  for (auto _ : state) benchmark::DoNotOptimize(wavelet_masks(m0));
}
BENCHMARK(BM_WaveletMasks);

void BM_AnalysisSynthesis(benchmark::State& state) {
  const auto bundle = wavelet_masks(designed().mask);
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd;
  for (auto& v : x) v = nd(gen);
  for (auto _ : state) benchmark::DoNotOptimize(synthesis(analysis(x, bundle, 3), bundle));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AnalysisSynthesis)->RangeMultiplier(4)->Range(256, 16384);

void BM_DesignMask(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(design_mask({builtin_target("zero-plateau"), 0.05, std::nullopt, 65536, std::nullopt}));
  }
}
BENCHMARK(BM_DesignMask)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
