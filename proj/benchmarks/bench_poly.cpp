#include "ergocert/analysis.hpp"
#include "ergocert/poly.hpp"
#include "fixtures.hpp"

#include <benchmark/benchmark.h>

using namespace ergocert;

static void BM_DetPolyEx82(benchmark::State& state) {
  const auto p = fixtures::four_species_robust("in [0.5, 1]").problem();
  const auto fam = analysis::reduce_to_cv(p.cm, p.net.domains);
  for (auto _ : state) benchmark::DoNotOptimize(poly::det_poly(fam.upper).terms().size());
}
BENCHMARK(BM_DetPolyEx82);

static void BM_BoxPositivityEx82(benchmark::State& state) {
  const auto p = fixtures::four_species_robust("in [0.5, 1]").problem();
  const auto fam = analysis::reduce_to_cv(p.cm, p.net.domains);
  const auto det = poly::det_poly(fam.upper);
  for (auto _ : state) benchmark::DoNotOptimize(poly::box_positivity(det, fam.box).status);
}
BENCHMARK(BM_BoxPositivityEx82)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
