// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "vaba/pb.hpp"

namespace vaba {

// Four chained provable broadcasts under one base id. Stage j > 1 carries the
// stage j-1 threshold signature as its internal proof and receivers accept it
// only if that chain checks out; stage 1 defers to the external validator.
// Deliveries in stages 2, 3 and 4 surface as key, lock and commit events, and
// the stage-4 threshold signature is the sender's completion proof.

inline constexpr std::uint32_t kStageCount = 4;

enum class StageKind { Key, Lock, Commit };

const char* stage_kind_name(StageKind kind);

struct StageDelivery {
  StageKind kind;
  TupleValue broadcast;  // <base, broadcaster, view>
  Value value;
  ThresholdSignature proof;  // the previous stage's threshold signature
};

// External screening for the whole chained broadcast, evaluated at stage 1.
using ExternalValidator =
    std::function<bool(const TupleValue& broadcast, const Value& value, const KeyProof& key)>;

// Stage-level acceptance rule shared by receivers: stage 1 defers to the
// external validator, later stages require the internal proof to validate
// <<broadcast, stage-1>, value>.
bool staged_validate(const TrustedDealer& crypto, const TupleValue& broadcast,
                     std::uint32_t stage, const PbMessage& message,
                     const ExternalValidator& external);

class StagedSender {
 public:
  StagedSender(TupleValue broadcast, PartyId self, std::uint32_t n, const TrustedDealer* crypto);

  // Starts stage 1; returns its send envelopes.
  std::vector<Envelope> start(Value value, KeyProof external);

  struct AckOutcome {
    std::vector<Envelope> envelopes;                // next stage's sends, if any
    std::optional<ThresholdSignature> completion;   // set when stage 4 resolves
  };

  // Routes an ack to the stage it belongs to. Completing a stage starts the
  // next one; completing stage 4 yields the completion proof. After abandon
  // no new stage is started.
  AckOutcome on_ack(std::uint32_t stage, PartyId from, const SignatureShare& share);

  void abandon() { abandoned_ = true; }
  bool completed() const { return completion_.has_value(); }
  const std::optional<ThresholdSignature>& completion() const { return completion_; }
  const Value& value() const { return value_; }
  const KeyProof& external_proof() const { return external_; }

 private:
  TupleValue broadcast_;
  PartyId self_;
  std::uint32_t n_;
  const TrustedDealer* crypto_;
  Value value_;
  KeyProof external_;
  std::vector<PbSender> stages_;  // one per stage, created as stages start
  bool started_ = false;
  bool abandoned_ = false;
  std::optional<ThresholdSignature> completion_;
};

class StagedReceiver {
 public:
  StagedReceiver(TupleValue broadcast, PartyId self, PartyId sender, const PartySigner* signer,
                 const TrustedDealer* crypto);

  struct Outcome {
    std::optional<StageDelivery> delivery;  // absent for stage-1 deliveries
    std::optional<Envelope> ack;
  };

  Outcome on_send(std::uint32_t stage, PartyId from, const PbMessage& message,
                  const ExternalValidator& external);

  // Stops all four stage instances; idempotent.
  void abandon();

  bool stopped() const;

 private:
  TupleValue broadcast_;
  const TrustedDealer* crypto_;
  std::vector<PbReceiver> stages_;
};

}  // namespace vaba
