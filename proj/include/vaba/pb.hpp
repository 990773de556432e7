// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "vaba/envelope.hpp"

namespace vaba {

// Provable broadcast: a sender disseminates one message, every receiver that
// accepts it answers with a signature share on <instance, value>, and 2f+1
// distinct shares combine into a threshold proof that at least f+1 honest
// parties delivered the value.

// Screening predicate supplied by the layer above; receivers deliver only
// messages it accepts.
using PbValidator = std::function<bool(const TupleValue& instance, const PbMessage&)>;

class PbSender {
 public:
  PbSender(TupleValue instance, PartyId self, std::uint32_t n, const TrustedDealer* crypto);

  // Emits the send envelope to every party (including the sender itself).
  // Throws std::logic_error if the instance was already started.
  std::vector<Envelope> broadcast(PbMessage message);

  // Accumulates a share if it validates against <instance, value> and the
  // signer is new; returns the threshold signature exactly once, when the
  // 2f+1st share lands.
  std::optional<ThresholdSignature> on_ack(PartyId from, const SignatureShare& share);

  bool started() const { return started_; }
  bool completed() const { return completed_; }
  const std::optional<ThresholdSignature>& proof() const { return proof_; }
  const PbMessage& message() const { return message_; }

 private:
  TupleValue instance_;
  PartyId self_;
  std::uint32_t n_;
  const TrustedDealer* crypto_;
  PbMessage message_;
  TupleValue signed_payload_;
  std::map<PartyId, SignatureShare> shares_;
  bool started_ = false;
  bool completed_ = false;
  std::optional<ThresholdSignature> proof_;
};

class PbReceiver {
 public:
  PbReceiver(TupleValue instance, PartyId self, PartyId sender, const PartySigner* signer,
             const TrustedDealer* crypto);

  struct Delivery {
    PbMessage message;
    Envelope ack;  // point-to-point, addressed to the sender
  };

  // Handles a send claimed to come from `from`. Delivers at most once, only
  // while not stopped, only from the designated sender, and only if the
  // validator accepts; everything else is silently ignored.
  std::optional<Delivery> on_send(PartyId from, const PbMessage& message,
                                  const PbValidator& validator);

  // Permanently stops this instance; idempotent. A delivery that already
  // happened stays delivered.
  void abandon();

  bool stopped() const { return stopped_; }
  bool delivered() const { return delivered_; }
  const TupleValue& instance() const { return instance_; }

 private:
  TupleValue instance_;
  PartyId self_;
  PartyId sender_;
  const PartySigner* signer_;
  const TrustedDealer* crypto_;
  bool stopped_ = false;
  bool delivered_ = false;
};

}  // namespace vaba
