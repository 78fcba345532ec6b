#include <maxrect/covering.hpp>
#include <maxrect/harness.hpp>
#include <maxrect/maximal.hpp>
#include <maxrect/orlicz.hpp>
#include <maxrect/weights.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace maxrect;

namespace {

GridFunction random_grid(std::vector<int> dims, std::uint64_t seed) {
  std::vector<double> lo(dims.size(), 0.0), hi(dims.size(), 1.0);
  const Box b(lo, hi, dims);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(b.cell_count());
  for (auto& x : v) x = u(rng);
  return GridFunction(b, std::move(v));
}

void BM_MaximalRect2D(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto f = random_grid({n, n}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(maximal_map(f, BasisSpec::rectangles()));
}
BENCHMARK(BM_MaximalRect2D)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_MaximalBrute2D(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto f = random_grid({n, n}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(maximal_map(f, BasisSpec::rectangles(), Algorithm::brute));
}
BENCHMARK(BM_MaximalBrute2D)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMillisecond);

void BM_MultilinearSweep(benchmark::State& state) {
  const int n = int(state.range(0));
  const std::vector<GridFunction> fs{random_grid({n, n}, 2), random_grid({n, n}, 3)};
  for (auto _ : state) benchmark::DoNotOptimize(multilinear_maximal_map(fs, BasisSpec::rectangles(), Algorithm::sweep));
}
BENCHMARK(BM_MultilinearSweep)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMillisecond);

void BM_Maximal3DCubes(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto f = random_grid({n, n, n}, 4);
  for (auto _ : state) benchmark::DoNotOptimize(maximal_map(f, BasisSpec::cubes()));
}
BENCHMARK(BM_Maximal3DCubes)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMillisecond);

void BM_SweepEngine(benchmark::State& state) {
  const Box b({0, 0}, {1, 1}, {128, 128});
  std::mt19937_64 rng(5);
  std::vector<RectValue> rects;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < state.range(0); ++i) rects.push_back({random_rect(b, rng), u(rng)});
  for (auto _ : state) benchmark::DoNotOptimize(sweep_engine(b, rects));
}
BENCHMARK(BM_SweepEngine)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

void BM_LuxemburgNorm(benchmark::State& state) {
  const auto f = random_grid({64, 64}, 6);
  const CellSet all = CellSet::all(f.box());
  for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(f, all, YoungSpec::phi(2, 2)));
}
BENCHMARK(BM_LuxemburgNorm);

void BM_ApConstant1D(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto w = build_grid(Box({0}, {1}, {n}), [](std::span<const double> x) { return std::pow(x[0], 0.5); });
  for (auto _ : state) benchmark::DoNotOptimize(ap_constant(w, 2.0, BasisSpec::rectangles()));
}
BENCHMARK(BM_ApConstant1D)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);

void BM_ExpOverlapSelection(benchmark::State& state) {
  const Box b({0, 0}, {1, 1}, {64, 64});
  std::mt19937_64 rng(7);
  std::vector<Rect> rs;
  for (int i = 0; i < 200; ++i) rs.push_back(random_rect(b, rng, 24));
  for (auto _ : state) benchmark::DoNotOptimize(select_exp_overlap(b, rs, 2, 1.0));
}
BENCHMARK(BM_ExpOverlapSelection)->Unit(benchmark::kMillisecond);

void BM_SharpnessSweep(benchmark::State& state) {
  std::vector<double> Ns;
  for (int k = 0; k <= 10; ++k) Ns.push_back(std::pow(4.0, k));
  for (auto _ : state) benchmark::DoNotOptimize(sharpness_sweep(Ns));
}
BENCHMARK(BM_SharpnessSweep);

}  // namespace

BENCHMARK_MAIN();
