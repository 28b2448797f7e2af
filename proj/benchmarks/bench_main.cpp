#include <benchmark/benchmark.h>

#include <random>

#include "harmonic/analysis.hpp"
#include "harmonic/catalog.hpp"
#include "harmonic/counting.hpp"
#include "harmonic/newton.hpp"
#include "harmonic/oracle.hpp"
#include "harmonic/tiles.hpp"
#include "harmonic/validate.hpp"

using namespace harmonic;

namespace {

const char* kMaps[] = {"mpw", "log-example", "wilmshurst:3", "nexp", "double-caustic"};

const MapAnalysis& cached(int i) {
  static std::vector<MapAnalysis> all = [] {
    std::vector<MapAnalysis> v;
    for (const char* k : kMaps) v.push_back(analyze(catalog_map(k).map));
    return v;
  }();
  return all[i];
}

std::vector<Cx> targets(const MapAnalysis& an) {
  std::mt19937_64 rng(42);
  return random_etas(an, 16, rng);
}

}  // namespace

static void BM_Analyze(benchmark::State& state) {
  const HarmonicMap f = catalog_map(kMaps[state.range(0)]).map;
  for (auto _ : state) benchmark::DoNotOptimize(analyze(f));
  state.SetLabel(kMaps[state.range(0)]);
}
BENCHMARK(BM_Analyze)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

static void BM_Count(benchmark::State& state) {
  const MapAnalysis& an = cached(state.range(0));
  const auto etas = targets(an);
  size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(count_preimages(an, etas[i++ % etas.size()]).N);
  state.SetLabel(kMaps[state.range(0)]);
}
BENCHMARK(BM_Count)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

static void BM_Solve(benchmark::State& state) {
  const MapAnalysis& an = cached(state.range(0));
  const auto etas = targets(an);
  size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_preimages(an, etas[i++ % etas.size()]).points.size());
  state.SetLabel(kMaps[state.range(0)]);
}
BENCHMARK(BM_Solve)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

// the brute-force oracle is the slow leg of the triple check
static void BM_Oracle(benchmark::State& state) {
  const MapAnalysis& an = cached(state.range(0));
  const auto etas = targets(an);
  size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_count(an.f, etas[i++ % etas.size()]).count);
  state.SetLabel(kMaps[state.range(0)]);
}
BENCHMARK(BM_Oracle)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

static void BM_Tiles(benchmark::State& state) {
  const MapAnalysis& an = cached(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tile_decomposition(an).tiles.size());
  state.SetLabel(kMaps[state.range(0)]);
}
BENCHMARK(BM_Tiles)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
