#include <superspin/superspin.hpp>

#include <benchmark/benchmark.h>

using namespace superspin;

static void BM_GrassmannMul(benchmark::State &state) {
  const int order = static_cast<int>(state.range(0));
  Rng rng(1);
  const GrassmannNumber x = random_grassmann(rng, order, Parity::even);
  const GrassmannNumber y = random_grassmann(rng, order, Parity::even);
  for (auto _ : state)
    benchmark::DoNotOptimize(gr_mul(x, y));
}
BENCHMARK(BM_GrassmannMul)->DenseRange(2, 10, 2);

static void BM_SupermatrixExp(benchmark::State &state) {
  const Supermatrix M = random_so0(3, static_cast<int>(state.range(0)), 4, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(sm_exp(M));
}
BENCHMARK(BM_SupermatrixExp)->Arg(1)->Arg(2);

static void BM_Sdet(benchmark::State &state) {
  Rng rng(3);
  const Supermatrix M = random_supermatrix(rng, 3, 4, static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(sm_sdet(M));
}
BENCHMARK(BM_Sdet)->Arg(2)->Arg(4)->Arg(6);

static void BM_CliffordMul(benchmark::State &state) {
  Rng rng(4);
  const int cap = static_cast<int>(state.range(0));
  const CliffordElement x = random_bivector(rng, 3, 2, 2).to_clifford(cap);
  const CliffordElement y = random_bivector(rng, 3, 2, 2).to_clifford(cap);
  for (auto _ : state)
    benchmark::DoNotOptimize(cl_mul(x, y));
}
BENCHMARK(BM_CliffordMul)->Arg(4)->Arg(8);

static void BM_DecomposeSO0(benchmark::State &state) {
  const Supermatrix M = random_SO0(3, static_cast<int>(state.range(0)), 4, 11, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(decompose_SO0(M));
}
BENCHMARK(BM_DecomposeSO0)->Arg(1)->Arg(2);

static void BM_Lift(benchmark::State &state) {
  const Supermatrix M = random_SO0(3, 2, 4, 12, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(lift(M));
}
BENCHMARK(BM_Lift);

BENCHMARK_MAIN();
