// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vaba/election.hpp"
#include "vaba/staged.hpp"
#include "vaba/validators.hpp"

namespace vaba {

// Cross-view key record: the highest-view adoptable value and the stage-1
// threshold signature that backs it. view == 0 means "own input, no proof".
struct KeyRecord {
  ViewNumber view = 0;
  Value value;
  std::optional<ThresholdSignature> proof;
};

// Instrumentation hooks. Parties call these as events happen; the simulation
// harness uses them for ground-truth bookkeeping and invariant checks.
class EngineObserver {
 public:
  virtual ~EngineObserver() = default;
  virtual void on_view_entered(PartyId, ViewNumber) {}
  virtual void on_pb_delivery(PartyId, ViewNumber, PartyId /*broadcaster*/, std::uint32_t /*stage*/,
                              const Value&) {}
  virtual void on_stage_delivery(PartyId, ViewNumber, PartyId /*broadcaster*/,
                                 const StageDelivery&) {}
  virtual void on_elect_invoked(PartyId, ViewNumber) {}
  virtual void on_leader_resolved(PartyId, ViewNumber, PartyId /*leader*/) {}
  virtual void on_decide(PartyId, ViewNumber, const Value&) {}
  virtual void on_invariant_violation(PartyId, const std::string&) {}
};

// One party's agreement state machine. Strictly event-driven: feed it one
// envelope at a time through handle() and ship every envelope it returns.
// A party keeps participating after deciding; the harness halts the run once
// every honest party has decided.
//
// Each view runs three phases. Broadcast: all n chained broadcasts get
// receivers, the party starts its own, and a completed own broadcast is
// announced with a done message. Once 2f+1 done messages are seen the party
// shares a signature on a skip message; a threshold skip signature flips the
// skip flag, the party abandons all broadcasts and invokes the election.
// View change: the party reports the elected leader's key/lock/commit
// deliveries to everyone, decides on any valid commit slot, raises LOCK on a
// valid lock slot, adopts the freshest valid key slot, and advances after
// view-change messages from 2f+1 distinct senders.
class Party {
 public:
  Party(TupleValue base_id, PartyId self, const PartySigner* signer, const TrustedDealer* crypto,
        Value input, AppValidator app_validator, EngineObserver* observer = nullptr);

  Party(const Party&) = delete;
  Party& operator=(const Party&) = delete;
  Party(Party&&) = default;

  // Enters view 1 and returns the initial broadcast envelopes.
  std::vector<Envelope> start();

  // Processes one delivered envelope; returns everything to send in response.
  std::vector<Envelope> handle(const Envelope& env);

  // Proposal screening for chained broadcasts of view `proposal_view`:
  // the value must pass the agreement validator, the carried key must either
  // be the empty key or a valid stage-1 proof from the leader of its own
  // view, and the key's view must not be below this party's LOCK.
  bool validate_proposal(ViewNumber proposal_view, const Value& value, const KeyProof& key) const;

  PartyId id() const { return self_; }
  ViewNumber current_view() const { return view_; }
  ViewNumber lock() const { return lock_; }
  const KeyRecord& key() const { return key_; }
  const std::optional<Value>& decided() const { return decided_; }
  ViewNumber decided_view() const { return decided_view_; }
  std::optional<PartyId> leader_of(ViewNumber view) const;
  const Value& input() const { return input_; }

 private:
  struct ViewState {
    enum class Phase { Broadcast, Election, ViewChange };
    Phase phase = Phase::Broadcast;
    std::optional<StagedSender> own;
    std::vector<StagedReceiver> receivers;
    std::optional<Election> election;
    std::set<PartyId> done_from;
    bool skip_share_sent = false;
    std::map<PartyId, SignatureShare> skip_shares;
    bool skip = false;
    bool skip_sent = false;
    std::array<std::vector<std::optional<ViewChangeSlot>>, 3> deliveries;  // key/lock/commit
    std::set<PartyId> view_change_from;
    std::vector<Envelope> pending_view_change;
  };

  void enter_view(ViewNumber view, std::vector<Envelope>& out);
  void dispatch(const Envelope& env, std::vector<Envelope>& out);
  void handle_pb_send(const Envelope& env, std::vector<Envelope>& out);
  void handle_pb_ack(const Envelope& env, std::vector<Envelope>& out);
  void handle_done(const Envelope& env, std::vector<Envelope>& out);
  void handle_skip_share(const Envelope& env, std::vector<Envelope>& out);
  void handle_skip(const Envelope& env, std::vector<Envelope>& out);
  void handle_coin_share(const Envelope& env, std::vector<Envelope>& out);
  void handle_view_change(const Envelope& env, std::vector<Envelope>& out);

  void set_skip(ViewNumber view, const ThresholdSignature& sig, std::vector<Envelope>& out);
  void on_leader_resolved(ViewNumber view, PartyId leader, std::vector<Envelope>& out);
  void process_view_change(const Envelope& env, std::vector<Envelope>& out);
  void maybe_advance(std::vector<Envelope>& out);
  void broadcast_to_all(TupleValue instance, MsgKind kind, ViewNumber view,
                        EnvelopePayload payload, std::vector<Envelope>& out);

  ViewState& state() { return views_.at(view_); }
  const ViewState& state() const { return views_.at(view_); }

  TupleValue base_;
  PartyId self_;
  const PartySigner* signer_;
  const TrustedDealer* crypto_;
  std::uint32_t n_;
  std::uint32_t f_;
  Value input_;
  AppValidator app_validator_;
  EngineObserver* observer_;

  ViewNumber view_ = 0;  // 0 until start()
  ViewNumber lock_ = 0;
  KeyRecord key_;
  std::optional<Value> decided_;
  ViewNumber decided_view_ = 0;
  std::vector<PartyId> leaders_;  // leaders_[j-1] = leader of view j
  std::map<ViewNumber, ViewState> views_;
  std::map<ViewNumber, std::vector<Envelope>> future_;
};

}  // namespace vaba
