#include <benchmark/benchmark.h>

#include "clusterlab/pattern.hpp"
#include "clusterlab/weights.hpp"

namespace {

using namespace clusterlab;

void BM_WindowOccupancy(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  EnumTask t{hypercubic(2), ClusterClass::kSiteAnimal, SizeMeasure::kSites, side * side};
  WeightModel w = WeightModel::unit();
  UVPair uv = builtin_uv(t.lattice, t.cls, w);
  Window win;
  win.lo = make_cell({-(side - 1) / 2, -(side - 1) / 2});
  win.hi = make_cell({win.lo[0] + side - 1, win.lo[1] + side - 1});
  for (auto _ : state) benchmark::DoNotOptimize(window_occupancy_table(t, uv, w, win, 1, side * side));
}
BENCHMARK(BM_WindowOccupancy)->DenseRange(5, 6, 1)->Unit(benchmark::kMillisecond);

void BM_BuiltinUV(benchmark::State& state) {
  LatticePtr z2 = hypercubic(2);
  for (auto _ : state) benchmark::DoNotOptimize(builtin_uv(z2, ClusterClass::kBondTree, WeightModel::unit()));
}
BENCHMARK(BM_BuiltinUV)->Unit(benchmark::kMillisecond);

void BM_FlipRandomCluster(benchmark::State& state) {
  EnumTask t{hypercubic(2), ClusterClass::kSiteAnimal, SizeMeasure::kSites, 40};
  UVPair uv = builtin_uv(t.lattice, t.cls, WeightModel::unit());
  Cluster g = random_cluster(t, 40, 7);
  for (auto _ : state) benchmark::DoNotOptimize(occurrences(g, uv.u));
}
BENCHMARK(BM_FlipRandomCluster)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
