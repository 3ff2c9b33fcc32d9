#include <benchmark/benchmark.h>

#include "clusterlab/enumerate.hpp"
#include "clusterlab/pattern.hpp"

namespace {

using namespace clusterlab;

void BM_CountSiteAnimals(benchmark::State& state) {
  EnumTask t{hypercubic(2), ClusterClass::kSiteAnimal, SizeMeasure::kSites, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(count_clusters(t));
}
BENCHMARK(BM_CountSiteAnimals)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

void BM_CountBondAnimals(benchmark::State& state) {
  EnumTask t{hypercubic(2), ClusterClass::kBondAnimal, SizeMeasure::kSites, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(count_clusters(t));
}
BENCHMARK(BM_CountBondAnimals)->DenseRange(7, 10, 1)->Unit(benchmark::kMillisecond);

void BM_StatisticsTriangular(benchmark::State& state) {
  EnumTask t{triangular(), ClusterClass::kSiteAnimal, SizeMeasure::kSites, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(statistics_histograms(t));
}
BENCHMARK(BM_StatisticsTriangular)->DenseRange(7, 9, 1)->Unit(benchmark::kMillisecond);

void BM_MissingNorthHistogram(benchmark::State& state) {
  EnumTask t{hypercubic(2), ClusterClass::kBondAnimal, SizeMeasure::kSites, static_cast<int>(state.range(0))};
  Pattern p = missing_north_neighbor(*t.lattice);
  for (auto _ : state) benchmark::DoNotOptimize(pattern_histograms(t, {p}));
}
BENCHMARK(BM_MissingNorthHistogram)->DenseRange(7, 9, 1)->Unit(benchmark::kMillisecond);

void BM_OracleSiteAnimals(benchmark::State& state) {
  EnumTask t{hypercubic(2), ClusterClass::kSiteAnimal, SizeMeasure::kSites, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(oracle_enumerate(t, t.n_max));
}
BENCHMARK(BM_OracleSiteAnimals)->DenseRange(5, 7, 1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
