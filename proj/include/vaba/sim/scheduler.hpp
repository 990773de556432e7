// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vaba/envelope.hpp"

namespace vaba::sim {

struct PendingEnvelope {
  Envelope env;
  std::uint64_t seq = 0;      // enqueue order, unique per run
  std::uint64_t sent_at = 0;  // event time when enqueued
  bool from_corrupted = false;
};

// In-flight messages, kept in enqueue order so every scheduling decision is a
// deterministic function of the run seed.
class PendingQueue {
 public:
  void push(PendingEnvelope pe) { items_.push_back(std::move(pe)); }

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const PendingEnvelope& at(std::size_t i) const { return items_[i]; }

  PendingEnvelope pop(std::size_t i) {
    PendingEnvelope pe = std::move(items_[i]);
    items_.erase(items_.begin() + static_cast<std::ptrdiff_t>(i));
    return pe;
  }

  // Index of the oldest envelope (lowest seq), i.e. index 0.
  std::size_t oldest_index() const { return 0; }

  // Drops every pending envelope sent by `from` (used when a party is
  // corrupted mid-run; its unsent traffic is no longer owed delivery).
  void remove_from(PartyId from) {
    std::erase_if(items_, [from](const PendingEnvelope& pe) { return pe.env.from == from; });
  }

 private:
  std::vector<PendingEnvelope> items_;
};

// Uniform choice among pending envelopes.
std::size_t pick_uniform(const PendingQueue& queue, std::mt19937_64& rng);

}  // namespace vaba::sim
