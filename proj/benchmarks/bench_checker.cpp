#include <benchmark/benchmark.h>

#include <bit>

#include "vdm/delta_matroid.hpp"
#include "vdm/subdivision.hpp"

using namespace vdm;

namespace {

SubsetFunction random_instance(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_subset_function(n, rng);
}

SubsetFunction even_odd(int n, std::uint64_t seed) {
  Rng rng(seed);
  SubsetFunction p(n);
  for (std::uint32_t s = 0; s < p.table_size(); ++s)
    p.set(s, Val(Rat(std::popcount(s) % 2 ? rng.int_in(1, 9) : 0)));
  return p;
}

}  // namespace

static void BM_CheckerRandom(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    SubsetFunction p = random_instance(n, seed++);
    benchmark::DoNotOptimize(is_valuated_delta_matroid(p).valuated);
  }
}
BENCHMARK(BM_CheckerRandom)->DenseRange(3, 6);

static void BM_CheckerValuated(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    SubsetFunction p = even_odd(n, seed++);
    benchmark::DoNotOptimize(is_valuated_delta_matroid(p).valuated);
  }
}
BENCHMARK(BM_CheckerValuated)->DenseRange(4, 8);

static void BM_LongEdges(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    SubsetFunction p = random_instance(n, seed++);
    benchmark::DoNotOptimize(long_edges(p, 3).size());
  }
}
BENCHMARK(BM_LongEdges)->DenseRange(3, 5);

static void BM_MaximalCellsExhaustive(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    SubsetFunction p = even_odd(n, seed++);
    MaximalCellsOptions opts;
    opts.mode = CellMode::exhaustive;
    benchmark::DoNotOptimize(maximal_cells(p, opts).size());
  }
}
BENCHMARK(BM_MaximalCellsExhaustive)->DenseRange(3, 4);

static void BM_MaximalCellsBfs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    SubsetFunction p = even_odd(n, seed++);
    MaximalCellsOptions opts;
    opts.mode = CellMode::bfs;
    benchmark::DoNotOptimize(maximal_cells(p, opts).size());
  }
}
BENCHMARK(BM_MaximalCellsBfs)->DenseRange(3, 5);

static void BM_RandomDeltaMatroid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_delta_matroid(n, seed++, {64, true}).size());
  }
}
BENCHMARK(BM_RandomDeltaMatroid)->DenseRange(4, 6);
