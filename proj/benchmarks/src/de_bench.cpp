#include <benchmark/benchmark.h>

#include "metiblt/density_evolution.hpp"
#include "metiblt/design.hpp"

namespace {

using namespace metiblt;

EnsembleParams bench_ensemble() {
  auto config = reference_design().materialize(8, 32, 32, 1, "bench");
  return make_ensemble(config);
}

void BM_DeStep(benchmark::State& state) {
  auto ensemble = bench_ensemble();
  auto st = de_init(ensemble);
  for (auto _ : state) {
    de_step(st, ensemble, 0.78);
    benchmark::DoNotOptimize(st.q.data());
  }
}
BENCHMARK(BM_DeStep);

void BM_DeRun(benchmark::State& state) {
  auto ensemble = bench_ensemble();
  DeOptions options;
  for (auto _ : state) {
    auto run = de_run(ensemble, 0.78, options);
    benchmark::DoNotOptimize(run.feasible);
  }
}
BENCHMARK(BM_DeRun);

void BM_Threshold(benchmark::State& state) {
  auto ensemble = bench_ensemble();
  for (auto _ : state) {
    auto result = load_threshold(ensemble, 1e-4);
    benchmark::DoNotOptimize(result.eta_star);
  }
}
BENCHMARK(BM_Threshold);

}  // namespace
