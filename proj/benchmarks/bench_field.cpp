#include <benchmark/benchmark.h>

#include "vdm/presets.hpp"
#include "vdm/representability.hpp"

using namespace vdm;

static void BM_PrincipalMinors(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  auto spec = presets::complex_t_adic();
  std::vector<FieldMatrix> pool;
  for (int i = 0; i < 8; ++i)
    pool.push_back(random_structured_matrix(spec, n, MatrixTag::hermitian, rng));
  size_t k = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(principal_minor_valuations(pool[k++ % pool.size()]).domain().size());
}
BENCHMARK(BM_PrincipalMinors)->DenseRange(3, 5);

static void BM_Factorization(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(5);
  auto spec = presets::eisenstein_2adic();
  std::vector<FieldMatrix> pool;
  for (int i = 0; i < 8; ++i)
    pool.push_back(random_structured_matrix(spec, n, MatrixTag::skew_hermitian, rng));
  std::vector<std::vector<FieldElem>> id;
  for (int i = 0; i < n; ++i) {
    std::vector<FieldElem> e(n, FieldElem::zero(spec));
    e[i] = FieldElem::one(spec);
    id.push_back(std::move(e));
  }
  size_t k = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_factorization(pool[k++ % pool.size()], id, 1, 2).pass);
}
BENCHMARK(BM_Factorization)->DenseRange(3, 5);

static void BM_HenselValuation(benchmark::State& state) {
  auto spec = presets::violating_2adic();
  Rng rng(11);
  std::vector<FieldElem> pool;
  for (int i = 0; i < 32; ++i) pool.push_back(random_field_elem(spec, rng, true));
  size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(valuation(pool[k++ % pool.size()]).is_finite());
}
BENCHMARK(BM_HenselValuation);
