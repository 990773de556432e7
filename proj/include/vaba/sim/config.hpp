// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vaba::sim {

enum class AdversaryKind { FairRandom, CrashF, EquivocateSenders, DelayLeader, AdaptiveCorruptLeader };

// CLI names: fair, crash, equivocate, delay-leader, adaptive.
AdversaryKind adversary_kind_from_string(const std::string& name);  // throws on unknown
const char* adversary_kind_name(AdversaryKind kind);

struct HaltPolicy {
  // An exhausted budget marks the run as failed; it is a backstop, not a
  // normal exit. Fault-free runs at n=10 finish in well under 10^5 events.
  std::uint64_t event_budget = 1'000'000;
  // Envelopes pending longer than this are force-delivered oldest-first, so
  // no strategy can starve a message forever.
  std::uint64_t aging_bound = 20'000;
};

struct ExperimentConfig {
  std::uint32_t n = 4;
  std::uint32_t f = 1;
  AdversaryKind adversary = AdversaryKind::FairRandom;
  std::string validator = "even";
  std::uint64_t seed = 1;
  std::uint32_t runs = 1;
  HaltPolicy halt;
  std::string trace_path;  // empty = no trace
  std::string out_path;    // empty = stdout

  void validate() const;  // throws std::invalid_argument

  std::string to_json() const;
  static ExperimentConfig from_json_value(const std::string& text);
};

// Parses a JSON array of configs (the sweep file format).
std::vector<ExperimentConfig> parse_sweep_file(const std::string& text);

}  // namespace vaba::sim
