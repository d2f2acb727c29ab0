#include <benchmark/benchmark.h>

#include "vdm/lp.hpp"
#include "vdm/rng.hpp"
#include "vdm/subdivision.hpp"

using namespace vdm;

// The face LP over a full-support lift: one equality pair, the rest strict.
static void BM_FaceLp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  SubsetFunction p = random_subset_function(n, rng);
  const auto dom = p.domain();
  size_t k = 0;
  for (auto _ : state) {
    const std::uint32_t s = dom[k % dom.size()];
    const std::uint32_t t = dom[(k * 7 + 1) % dom.size()];
    ++k;
    if (s == t) continue;
    benchmark::DoNotOptimize(is_face(p, {s, t}).has_value());
  }
}
BENCHMARK(BM_FaceLp)->DenseRange(3, 5);

static void BM_StrictFeasibleDense(benchmark::State& state) {
  const int rows = static_cast<int>(state.range(0));
  Rng rng(7);
  std::vector<lp::LinearConstraint> ineqs;
  for (int i = 0; i < rows; ++i) {
    lp::LinearConstraint c;
    for (int v = 0; v < 6; ++v) c.coeffs.push_back(Rat(rng.int_in(-4, 4)));
    c.rhs = Rat(rng.int_in(-8, 0));
    ineqs.push_back(std::move(c));
  }
  for (auto _ : state) benchmark::DoNotOptimize(lp::strict_feasible(6, {}, ineqs).has_value());
}
BENCHMARK(BM_StrictFeasibleDense)->Arg(16)->Arg(32)->Arg(64);
