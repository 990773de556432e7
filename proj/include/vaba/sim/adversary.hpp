// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "vaba/crypto.hpp"
#include "vaba/sim/config.hpp"
#include "vaba/sim/scheduler.hpp"

namespace vaba::sim {

// What the adversary is allowed to touch: the public crypto surface, the
// signers of corrupted parties, envelope traffic, and corruption requests
// bounded by f. It never sees honest signers, honest internal state, or the
// coin master seed, so a coin is unpredictable until f+1 shares exist.
struct AdversaryContext {
  PublicCrypto crypto;
  TupleValue base_id;
  std::uint32_t n = 0;
  std::uint32_t f = 0;
  std::mt19937_64 rng;

  std::set<PartyId> corrupted;
  // Corrupt-origin proposals: the harness feeds these as the corrupted
  // parties' inputs before the run starts.
  std::map<PartyId, Value> input_overrides;

  // Wired by the harness. Corrupts a party if budget remains; optionally
  // drops the party's already-pending envelopes. Returns false when the
  // budget is exhausted or the party is already corrupted.
  std::function<bool(PartyId, bool /*drop_pending*/)> request_corrupt;
  std::function<const PartySigner*(PartyId)> corrupted_signer;  // corrupted ids only
};

class Adversary {
 public:
  virtual ~Adversary() = default;

  // Initial corruption and input overrides.
  virtual void on_run_start(AdversaryContext&) {}

  // Scheduling decision among pending envelopes (queue is never empty).
  virtual std::size_t select(const PendingQueue& queue, std::uint64_t now,
                             std::mt19937_64& sched_rng, AdversaryContext& ctx);

  // Sees every envelope as it is enqueued, honest and corrupt alike.
  virtual void observe_send(const Envelope&, AdversaryContext&) {}

  // Rewrites one output of a corrupted party's machine. Returning an empty
  // vector suppresses it; extra envelopes may be injected alongside.
  virtual std::vector<Envelope> filter_output(const Envelope& env, AdversaryContext&) {
    return {env};
  }

  // Whether a corrupted party's machine still runs (origin-only corruption)
  // or the adversary absorbs its deliveries.
  virtual bool machine_runs(PartyId, const AdversaryContext&) const { return false; }

  // Reaction to an envelope absorbed on behalf of a corrupted party.
  virtual std::vector<Envelope> on_deliver_to_corrupted(const Envelope&, AdversaryContext&) {
    return {};
  }
};

std::unique_ptr<Adversary> make_adversary(AdversaryKind kind);

}  // namespace vaba::sim
