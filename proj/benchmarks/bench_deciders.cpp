#include <benchmark/benchmark.h>

#include "catalog.hpp"
#include "dihedra/angles.hpp"
#include "dihedra/flow.hpp"

using namespace dihedra;
using namespace dihedra::testing;

namespace {

struct Instance {
  TriangulatedSurface surface;
  AngleAssignment delta;
};

// Realizable angles on a random sphere.
Instance sphere_instance(int faces, unsigned seed) {
  std::mt19937_64 rng(seed);
  auto s = random_sphere(faces, rng);
  auto d = delta_from_corners(s, random_corner_angles(s, rng, 8));
  return {s, AngleAssignment(s, d)};
}

}  // namespace

static void BM_FlowNonStrict(benchmark::State& state) {
  const auto in = sphere_instance(static_cast<int>(state.range(0)), 1);
  FlowOptions o;
  o.strict = false;
  for (auto _ : state) benchmark::DoNotOptimize(decide_flow(in.surface, in.delta, o));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FlowNonStrict)->RangeMultiplier(10)->Range(100, 10000)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_FlowStrict(benchmark::State& state) {
  const auto in = sphere_instance(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(decide_flow(in.surface, in.delta));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FlowStrict)->RangeMultiplier(10)->Range(100, 10000)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_Lp(benchmark::State& state) {
  const auto in = sphere_instance(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(decide_lp(in.surface, in.delta));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Lp)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_Bruteforce(benchmark::State& state) {
  const auto in = sphere_instance(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(check_conditions_bruteforce(in.surface, in.delta));
}
BENCHMARK(BM_Bruteforce)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

static void BM_Simple(benchmark::State& state) {
  const auto in = sphere_instance(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(check_conditions_simple(in.surface, in.delta));
}
BENCHMARK(BM_Simple)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

static void BM_Kappa(benchmark::State& state) {
  const auto in = sphere_instance(static_cast<int>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(check_kappa_all(in.surface, in.delta));
}
BENCHMARK(BM_Kappa)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

// One criterion-style sweep: every engine on one 8-face surface.
static void BM_CatalogInstance(benchmark::State& state) {
  const auto in = sphere_instance(8, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_conditions_bruteforce(in.surface, in.delta));
    benchmark::DoNotOptimize(check_conditions_simple(in.surface, in.delta));
    benchmark::DoNotOptimize(check_kappa_all(in.surface, in.delta));
    benchmark::DoNotOptimize(decide_lp(in.surface, in.delta));
  }
}
BENCHMARK(BM_CatalogInstance)->Unit(benchmark::kMicrosecond);
