// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "vaba/sim/harness.hpp"

namespace vaba::sim {

// Cross-run aggregate of a batch.
struct AggregateSummary {
  std::size_t runs = 0;
  double mean_views_to_decide = 0.0;
  double p50_views_to_decide = 0.0;
  double p90_views_to_decide = 0.0;
  double p_decide_view1 = 0.0;
  double max_words_per_view_over_n2 = 0.0;  // max over runs
  double quality_rate = 0.0;
  double mean_duration = 0.0;
  double p90_duration = 0.0;
  std::size_t failed_runs = 0;       // runs that did not reach all-honest-decided
  std::size_t violation_runs = 0;    // runs with any invariant violation
};

AggregateSummary aggregate(std::span<const RunMetrics> metrics);  // throws on empty
std::string summary_to_json(const AggregateSummary& s);

struct BatchResult {
  std::vector<RunMetrics> metrics;  // in seed order
  std::string csv;
  std::string trace;  // concatenated per-run traces, in seed order
  AggregateSummary summary;
};

// Runs cfg.runs seeded runs (seeds cfg.seed .. cfg.seed+runs-1). Each run is
// an isolated deterministic computation, so the parallel executor produces
// byte-identical CSV and trace output to the serial one; the serial path is
// kept as the reference. Traces are captured when capture_trace is set; with
// more than one run each run's events are preceded by a {"run_seed":..} line.
BatchResult run_batch(const ExperimentConfig& cfg, bool parallel, bool capture_trace);

std::string metrics_csv_header();
std::string metrics_csv_row(const RunMetrics& m);

}  // namespace vaba::sim
