#include "ergocert/linopt.hpp"
#include "fixtures.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace ergocert;
using linopt::Matrix;

static void BM_HurwitzLp(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int d = static_cast<int>(state.range(0));
  std::vector<Matrix> ms;
  for (int i = 0; i < 16; ++i) ms.push_back(fixtures::random_metzler(rng, d, 0.4, 1.0));
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(linopt::is_hurwitz_metzler(ms[k++ % ms.size()]).hurwitz);
}
BENCHMARK(BM_HurwitzLp)->Arg(4)->Arg(10)->Arg(25)->Arg(50);

static void BM_PerronFrobenius(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Matrix m = fixtures::random_metzler(rng, static_cast<int>(state.range(0)), 0.4, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(linopt::pf_eigenvalue(m));
}
BENCHMARK(BM_PerronFrobenius)->Arg(4)->Arg(25)->Arg(50);

BENCHMARK_MAIN();
