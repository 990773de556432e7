// SPDX-License-Identifier: Apache-2.0
//
// Compares the serial reference batch executor against the OpenMP one on the
// same workload. Both must produce identical output (the acceptance suite
// checks bytes); this target measures the speedup only.
#include <benchmark/benchmark.h>

#include "vaba/sim/batch.hpp"

using namespace vaba::sim;

namespace {

ExperimentConfig bench_config(std::uint32_t n, std::uint32_t f, std::uint32_t runs) {
  ExperimentConfig cfg;
  cfg.n = n;
  cfg.f = f;
  cfg.adversary = AdversaryKind::FairRandom;
  cfg.validator = "even";
  cfg.seed = 1;
  cfg.runs = runs;
  return cfg;
}

void BM_batch_serial(benchmark::State& state) {
  auto cfg = bench_config(static_cast<std::uint32_t>(state.range(0)),
                          static_cast<std::uint32_t>((state.range(0) - 1) / 3), 64);
  for (auto _ : state) {
    auto batch = run_batch(cfg, false, false);
    benchmark::DoNotOptimize(batch.summary.mean_views_to_decide);
  }
  state.SetItemsProcessed(state.iterations() * cfg.runs);
}

void BM_batch_parallel(benchmark::State& state) {
  auto cfg = bench_config(static_cast<std::uint32_t>(state.range(0)),
                          static_cast<std::uint32_t>((state.range(0) - 1) / 3), 64);
  for (auto _ : state) {
    auto batch = run_batch(cfg, true, false);
    benchmark::DoNotOptimize(batch.summary.mean_views_to_decide);
  }
  state.SetItemsProcessed(state.iterations() * cfg.runs);
}

}  // namespace

BENCHMARK(BM_batch_serial)->Arg(4)->Arg(7)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_batch_parallel)->Arg(4)->Arg(7)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
