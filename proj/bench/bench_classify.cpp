// Serial reference vs OpenMP worker pool on whole dimensions, plus the hot
// per-shard kernels.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "fwps/classify.hpp"
#include "fwps/gluing.hpp"

namespace {

const std::vector<fwps::WeightVector>& shards(size_t n) {
  static std::map<size_t, std::vector<fwps::WeightVector>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, fwps::shard_weights(n)).first;
  return it->second;
}

void BM_ClassifySerial(benchmark::State& state) {
  const auto& w = shards(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fwps::classify_serial(w));
}

void BM_ClassifyParallel(benchmark::State& state) {
  const auto& w = shards(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fwps::classify_parallel(w, int(state.range(1))));
  state.counters["hw_threads"] = omp_get_num_procs();
}

void BM_TorsionPool(benchmark::State& state) {
  const auto& w = shards(state.range(0));
  for (auto _ : state)
    for (const auto& x : w) benchmark::DoNotOptimize(fwps::torsion_pool(x));
}

void BM_AssembleLattices(benchmark::State& state) {
  const auto& w = shards(state.range(0));
  std::vector<fwps::TorsionPool> pools;
  for (const auto& x : w) pools.push_back(fwps::torsion_pool(x));
  for (auto _ : state)
    for (size_t i = 0; i < w.size(); ++i) benchmark::DoNotOptimize(fwps::assemble_lattices(w[i], pools[i]));
}

}  // namespace

BENCHMARK(BM_ClassifySerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifyParallel)->Args({3, 2})->Args({3, 8})->Args({4, 2})->Args({4, 8})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TorsionPool)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleLattices)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
