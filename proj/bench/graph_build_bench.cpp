// Serial reference builders vs. the OpenMP builders.
#include <benchmark/benchmark.h>

#include <vector>

#include "noma_mec/conflict_graph.hpp"
#include "noma_mec/scenario.hpp"

namespace {

using namespace nomamec;

Scenario make_scenario(std::size_t n_uds) {
  ScenarioConfig cfg;
  cfg.n_uds = n_uds;
  cfg.seed = 11;
  return generate(cfg);
}

std::vector<double> f_max(const Scenario& sc) {
  std::vector<double> f;
  for (const auto& ap : sc.aps) f.push_back(ap.f_loc_max_cps);
  return f;
}

void BM_FullSerial(benchmark::State& state) {
  const Scenario sc = make_scenario(static_cast<std::size_t>(state.range(0)));
  const auto f = f_max(sc);
  for (auto _ : state) benchmark::DoNotOptimize(reference::build_full(sc, f));
}

void BM_FullParallel(benchmark::State& state) {
  const Scenario sc = make_scenario(static_cast<std::size_t>(state.range(0)));
  const auto f = f_max(sc);
  for (auto _ : state) benchmark::DoNotOptimize(build_full(sc, f));
}

void BM_PrunedSerial(benchmark::State& state) {
  const Scenario sc = make_scenario(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::build_pruned(sc));
}

void BM_PrunedParallel(benchmark::State& state) {
  const Scenario sc = make_scenario(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_pruned(sc));
}

}  // namespace

BENCHMARK(BM_FullSerial)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FullParallel)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrunedSerial)->Arg(12)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrunedParallel)->Arg(12)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
