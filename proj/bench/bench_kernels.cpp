// Serial reference kernels against their OpenMP counterparts on
// word-sized usage sets. Run with OMP_NUM_THREADS to pick the thread count.

#include "lscd/kernels.hpp"
#include "lscd/metrics.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using lscd::Index;
using lscd::RowMatrix;

RowMatrix usages(Index rows, Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  RowMatrix m(rows, dim);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  return m;
}

void args(benchmark::internal::Benchmark* b) {
  for (int n : {64, 256, 1024}) b->Args({n, 768});
  b->Args({256, 64});
  b->Unit(benchmark::kMillisecond);
}

void BM_CrossStatsSerial(benchmark::State& state) {
  const RowMatrix a = usages(state.range(0), state.range(1), 1);
  const RowMatrix b = usages(state.range(0), state.range(1), 2);
  for (auto _ : state) benchmark::DoNotOptimize(lscd::kernels::serial::cross_stats(a, b));
  state.SetItemsProcessed(state.iterations() * a.rows() * b.rows());
}

void BM_CrossStatsParallel(benchmark::State& state) {
  const RowMatrix a = usages(state.range(0), state.range(1), 1);
  const RowMatrix b = usages(state.range(0), state.range(1), 2);
  for (auto _ : state) benchmark::DoNotOptimize(lscd::kernels::parallel::cross_stats(a, b));
  state.SetItemsProcessed(state.iterations() * a.rows() * b.rows());
}

void BM_DistanceMatrixSerial(benchmark::State& state) {
  const RowMatrix a = usages(state.range(0), state.range(1), 1);
  const RowMatrix b = usages(state.range(0), state.range(1), 2);
  for (auto _ : state) benchmark::DoNotOptimize(lscd::kernels::serial::distance_matrix(a, b));
  state.SetItemsProcessed(state.iterations() * a.rows() * b.rows());
}

void BM_DistanceMatrixParallel(benchmark::State& state) {
  const RowMatrix a = usages(state.range(0), state.range(1), 1);
  const RowMatrix b = usages(state.range(0), state.range(1), 2);
  for (auto _ : state) benchmark::DoNotOptimize(lscd::kernels::parallel::distance_matrix(a, b));
  state.SetItemsProcessed(state.iterations() * a.rows() * b.rows());
}

void BM_SamdGreedy(benchmark::State& state) {
  const RowMatrix a = usages(state.range(0), state.range(1), 1);
  const RowMatrix b = usages(state.range(0), state.range(1), 2);
  for (auto _ : state) benchmark::DoNotOptimize(lscd::metrics::samd_greedy(a, b, 0));
}

void BM_SamdHungarian(benchmark::State& state) {
  const RowMatrix a = usages(state.range(0), state.range(1), 1);
  const RowMatrix b = usages(state.range(0), state.range(1), 2);
  for (auto _ : state) benchmark::DoNotOptimize(lscd::metrics::samd_hungarian(a, b, 0));
}

}  // namespace

BENCHMARK(BM_CrossStatsSerial)->Apply(args);
BENCHMARK(BM_CrossStatsParallel)->Apply(args);
BENCHMARK(BM_DistanceMatrixSerial)->Apply(args);
BENCHMARK(BM_DistanceMatrixParallel)->Apply(args);
BENCHMARK(BM_SamdGreedy)->Args({256, 768})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SamdHungarian)->Args({256, 768})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
