#include "ergocert/sim.hpp"
#include "fixtures.hpp"

#include <benchmark/benchmark.h>

using namespace ergocert;

static void BM_SsaBirthDeath(benchmark::State& state) {
  const auto p = fixtures::load("birth_death.net");
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sim::ssa_run(p.net, {0}, 100.0, ++seed).times.size());
}
BENCHMARK(BM_SsaBirthDeath);

static void BM_EnsembleClosedLoop(benchmark::State& state) {
  const auto p = fixtures::load("birth_death.net");
  analysis::ControlSpec cs;
  cs.mu = 3.0;
  const auto cl = sim::build_closed_loop(p.net, cs);
  const auto grid = sim::uniform_grid(50.0, 51);
  sim::EnsembleOptions opts;
  opts.threads = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sim::ensemble_means(cl.network, {0, 0, 0}, 50.0, 256, grid, 7, opts).terminal_mean);
}
BENCHMARK(BM_EnsembleClosedLoop)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
