#include <benchmark/benchmark.h>

#include <random>

#include "catalog.hpp"
#include "dihedra/combgeo.hpp"
#include "dihedra/realization.hpp"
#include "dihedra/three_manifold.hpp"

using namespace dihedra;
using namespace dihedra::testing;

static void BM_DelaunayOfPoints(benchmark::State& state) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Point> pts;
  for (int i = 0; i < state.range(0); ++i) pts.emplace_back(u(rng), u(rng));
  for (auto _ : state) benchmark::DoNotOptimize(delaunay_of_points(pts));
}
BENCHMARK(BM_DelaunayOfPoints)->DenseRange(4, 12, 4)->Unit(benchmark::kMicrosecond);

static void BM_RefineAndDevelop(benchmark::State& state) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Point> pts;
  for (int i = 0; i < state.range(0); ++i) pts.emplace_back(u(rng), u(rng));
  const auto pt = delaunay_of_points(pts);
  const auto delta = rationalize_delta(pt.surface, pt.delta);
  const auto r = decide_lp(pt.surface, delta);
  if (!r.angles) {
    state.SkipWithError("not realizable after rounding");
    return;
  }
  const auto start = to_doubles(r.angles->corner);
  for (auto _ : state) {
    auto corner = euclidean_refinement(pt.surface, pt.delta, start);
    benchmark::DoNotOptimize(develop(pt.surface, corner));
  }
}
BENCHMARK(BM_RefineAndDevelop)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

static void BM_StellationCurvature(benchmark::State& state) {
  std::mt19937_64 rng(13);
  auto t = random_sphere(static_cast<int>(state.range(0)), rng);
  auto s = stellate(t);
  for (auto _ : state) benchmark::DoNotOptimize(positively_curved_realizability(s.surface));
}
BENCHMARK(BM_StellationCurvature)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

static void BM_TwoTetHyperbolic(benchmark::State& state) {
  const auto m = two_tet_census();
  for (auto _ : state) benchmark::DoNotOptimize(linear_hyperbolic_lp(m));
}
BENCHMARK(BM_TwoTetHyperbolic)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
