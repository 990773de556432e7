// SPDX-License-Identifier: Apache-2.0
#include "vaba/pb.hpp"

#include <stdexcept>

namespace vaba {

namespace {

ViewNumber view_of_instance(const TupleValue& instance) {
  // Instances are <<base, k, view>, stage>; fall back to 0 for free-standing
  // instances used in tests.
  if (!instance.is_tuple()) return 0;
  const auto& outer = instance.as_tuple();
  if (outer.size() != 2 || !outer[0].is_tuple()) return 0;
  const auto& bc = outer[0].as_tuple();
  if (bc.size() != 3 || !bc[2].is_integer()) return 0;
  return bc[2].as_integer();
}

PartyId broadcaster_of_instance(const TupleValue& instance) {
  if (!instance.is_tuple()) return 0;
  const auto& outer = instance.as_tuple();
  if (outer.size() != 2 || !outer[0].is_tuple()) return 0;
  const auto& bc = outer[0].as_tuple();
  if (bc.size() != 3 || !bc[1].is_integer()) return 0;
  return static_cast<PartyId>(bc[1].as_integer());
}

std::uint32_t stage_of_instance(const TupleValue& instance) {
  if (!instance.is_tuple()) return 0;
  const auto& outer = instance.as_tuple();
  if (outer.size() != 2 || !outer[1].is_integer()) return 0;
  return static_cast<std::uint32_t>(outer[1].as_integer());
}

Envelope make_pb_envelope(const TupleValue& instance, MsgKind kind, PartyId from, PartyId to,
                          EnvelopePayload payload) {
  Envelope env;
  env.instance = instance;
  env.kind = kind;
  env.view = view_of_instance(instance);
  env.broadcaster = broadcaster_of_instance(instance);
  env.stage = stage_of_instance(instance);
  env.from = from;
  env.to = to;
  env.payload = std::move(payload);
  return env;
}

}  // namespace

PbSender::PbSender(TupleValue instance, PartyId self, std::uint32_t n, const TrustedDealer* crypto)
    : instance_(std::move(instance)), self_(self), n_(n), crypto_(crypto) {}

std::vector<Envelope> PbSender::broadcast(PbMessage message) {
  if (started_) throw std::logic_error("provable broadcast already started");
  started_ = true;
  message_ = std::move(message);
  signed_payload_ = ack_payload_tuple(instance_, message_.value);
  std::vector<Envelope> out;
  out.reserve(n_);
  for (PartyId p = 0; p < n_; ++p) {
    out.push_back(
        make_pb_envelope(instance_, MsgKind::PbSend, self_, p, PbSendPayload{message_}));
  }
  return out;
}

std::optional<ThresholdSignature> PbSender::on_ack(PartyId from, const SignatureShare& share) {
  if (!started_ || completed_) return std::nullopt;
  if (shares_.contains(from)) return std::nullopt;
  if (!crypto_->share_validate(signed_payload_, from, share)) return std::nullopt;
  shares_.emplace(from, share);
  if (shares_.size() < crypto_->signature_threshold()) return std::nullopt;
  std::vector<SignatureShare> collected;
  collected.reserve(shares_.size());
  for (const auto& [_, s] : shares_) collected.push_back(s);
  completed_ = true;
  proof_ = threshold_sign(collected);
  return proof_;
}

PbReceiver::PbReceiver(TupleValue instance, PartyId self, PartyId sender,
                       const PartySigner* signer, const TrustedDealer* crypto)
    : instance_(std::move(instance)), self_(self), sender_(sender), signer_(signer),
      crypto_(crypto) {}

std::optional<PbReceiver::Delivery> PbReceiver::on_send(PartyId from, const PbMessage& message,
                                                        const PbValidator& validator) {
  if (stopped_ || from != sender_) return std::nullopt;
  if (!validator(instance_, message)) return std::nullopt;
  stopped_ = true;
  delivered_ = true;
  SignatureShare share = signer_->share_sign(ack_payload_tuple(instance_, message.value));
  Delivery d;
  d.message = message;
  d.ack = make_pb_envelope(instance_, MsgKind::PbAck, self_, sender_, PbAckPayload{share});
  return d;
}

void PbReceiver::abandon() { stopped_ = true; }

}  // namespace vaba
