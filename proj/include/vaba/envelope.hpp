// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <variant>

#include "vaba/crypto.hpp"
#include "vaba/tuple.hpp"

namespace vaba {

// Agreement domain values are canonical tuple values (plain integers, or
// tagged tuples for the "signed" validator).
using Value = TupleValue;

// The key a party carries across views: the view it came from and the stage-1
// threshold signature that backs it. view == 0 means "no key yet" and an
// absent signature.
struct KeyProof {
  ViewNumber view = 0;
  std::optional<ThresholdSignature> sig;

  friend bool operator==(const KeyProof&, const KeyProof&) = default;
};

// Proof pair carried by every broadcast send: the external proof screens the
// value for agreement, the internal proof chains one stage to the next
// (absent in stage 1).
struct StagedProof {
  KeyProof external;
  std::optional<ThresholdSignature> internal;

  friend bool operator==(const StagedProof&, const StagedProof&) = default;
};

struct PbMessage {
  Value value;
  StagedProof proof;

  friend bool operator==(const PbMessage&, const PbMessage&) = default;
};

enum class MsgKind { PbSend, PbAck, Done, SkipShare, Skip, CoinShare, ViewChange };

const char* msg_kind_name(MsgKind kind);  // "send", "ack", "done", ...

struct PbSendPayload {
  PbMessage message;
};
struct PbAckPayload {
  SignatureShare share;
};
struct DonePayload {
  Value value;
  KeyProof key;
  ThresholdSignature completion;
};
struct SkipSharePayload {
  SignatureShare share;
};
struct SkipPayload {
  ThresholdSignature sig;
};
struct CoinSharePayload {
  CoinShare share;
};
struct ViewChangeSlot {
  Value value;
  ThresholdSignature proof;
};
struct ViewChangePayload {
  std::optional<ViewChangeSlot> key;
  std::optional<ViewChangeSlot> lock;
  std::optional<ViewChangeSlot> commit;
};

using EnvelopePayload = std::variant<PbSendPayload, PbAckPayload, DonePayload, SkipSharePayload,
                                     SkipPayload, CoinSharePayload, ViewChangePayload>;

// One protocol message in flight. Every envelope counts as one word.
struct Envelope {
  TupleValue instance;  // the tuple the message is about
  MsgKind kind = MsgKind::PbSend;
  ViewNumber view = 0;
  // For PbSend/PbAck: which party's broadcast and which stage (1..4).
  PartyId broadcaster = 0;
  std::uint32_t stage = 0;
  PartyId from = 0;
  PartyId to = 0;
  EnvelopePayload payload;
  int words = 1;
};

// Instance naming used across the stack. `base` identifies one agreement
// instance (a byte-string tag).
TupleValue broadcast_id(const TupleValue& base, PartyId broadcaster, ViewNumber view);
TupleValue stage_instance(const TupleValue& broadcast, std::uint32_t stage);
TupleValue ack_payload_tuple(const TupleValue& pb_instance, const Value& value);
TupleValue skip_tuple(const TupleValue& base, ViewNumber view);
TupleValue election_name(const TupleValue& base, ViewNumber view);

// Debug/trace form of a full envelope.
std::string envelope_to_json(const Envelope& env);

}  // namespace vaba
