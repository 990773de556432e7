// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vaba/engine.hpp"
#include "vaba/sim/adversary.hpp"
#include "vaba/sim/config.hpp"

namespace vaba::sim {

// Everything measured in one run. `violations` collects every invariant the
// ground-truth checker saw broken; an empty list plus all_honest_decided is a
// clean run.
struct RunMetrics {
  std::uint64_t seed = 0;
  std::uint32_t n = 0;
  std::uint32_t f = 0;

  bool all_honest_decided = false;
  bool budget_exhausted = false;
  std::map<ViewNumber, std::uint64_t> words_per_view;  // honest-sent envelopes only
  std::map<PartyId, ViewNumber> decide_view;           // honest deciders
  ViewNumber views_to_decide = 0;                      // max over honest deciders
  std::optional<Value> decided_value;
  bool quality_flag = false;  // decided value was a never-corrupted party's input
  double duration = 0.0;      // last honest decision time / longest delivery delay
  std::uint64_t events = 0;
  std::uint64_t max_delay = 0;
  std::uint64_t last_decide_event = 0;
  std::vector<std::string> violations;

  std::uint64_t words_in_view(ViewNumber view) const {
    auto it = words_per_view.find(view);
    return it == words_per_view.end() ? 0 : it->second;
  }
  std::uint64_t max_words_per_view() const {
    std::uint64_t best = 0;
    for (const auto& [_, w] : words_per_view) best = std::max(best, w);
    return best;
  }
  bool ok() const { return all_honest_decided && violations.empty(); }
};

struct RunResult {
  RunMetrics metrics;
  std::string trace;  // JSON lines, one per delivered envelope (if captured)
};

// Executes one run as a pure function of (config, run_seed). The run halts
// as soon as every honest party has decided; exhausting the event budget or
// stalling is recorded as a failure, never masked.
RunResult run_one(const ExperimentConfig& cfg, std::uint64_t run_seed, bool capture_trace);

}  // namespace vaba::sim
