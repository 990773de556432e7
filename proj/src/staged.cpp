// SPDX-License-Identifier: Apache-2.0
#include "vaba/staged.hpp"

#include <stdexcept>

namespace vaba {

const char* stage_kind_name(StageKind kind) {
  switch (kind) {
    case StageKind::Key: return "key";
    case StageKind::Lock: return "lock";
    case StageKind::Commit: return "commit";
  }
  return "?";
}

bool staged_validate(const TrustedDealer& crypto, const TupleValue& broadcast,
                     std::uint32_t stage, const PbMessage& message,
                     const ExternalValidator& external) {
  if (stage < 1 || stage > kStageCount) return false;
  if (stage == 1) return external(broadcast, message.value, message.proof.external);
  if (!message.proof.internal) return false;
  TupleValue prev = ack_payload_tuple(stage_instance(broadcast, stage - 1), message.value);
  return crypto.threshold_validate(prev, *message.proof.internal);
}

StagedSender::StagedSender(TupleValue broadcast, PartyId self, std::uint32_t n,
                           const TrustedDealer* crypto)
    : broadcast_(std::move(broadcast)), self_(self), n_(n), crypto_(crypto) {}

std::vector<Envelope> StagedSender::start(Value value, KeyProof external) {
  if (started_) throw std::logic_error("staged broadcast already started");
  started_ = true;
  value_ = std::move(value);
  external_ = std::move(external);
  stages_.emplace_back(stage_instance(broadcast_, 1), self_, n_, crypto_);
  return stages_.back().broadcast(PbMessage{value_, StagedProof{external_, std::nullopt}});
}

StagedSender::AckOutcome StagedSender::on_ack(std::uint32_t stage, PartyId from,
                                              const SignatureShare& share) {
  AckOutcome out;
  if (!started_ || stage < 1 || stage > stages_.size()) return out;
  auto proof = stages_[stage - 1].on_ack(from, share);
  if (!proof) return out;
  if (abandoned_) return out;
  if (stage == kStageCount) {
    completion_ = *proof;
    out.completion = completion_;
    return out;
  }
  stages_.emplace_back(stage_instance(broadcast_, stage + 1), self_, n_, crypto_);
  out.envelopes = stages_.back().broadcast(PbMessage{value_, StagedProof{external_, *proof}});
  return out;
}

StagedReceiver::StagedReceiver(TupleValue broadcast, PartyId self, PartyId sender,
                               const PartySigner* signer, const TrustedDealer* crypto)
    : broadcast_(std::move(broadcast)), crypto_(crypto) {
  stages_.reserve(kStageCount);
  for (std::uint32_t j = 1; j <= kStageCount; ++j) {
    stages_.emplace_back(stage_instance(broadcast_, j), self, sender, signer, crypto);
  }
}

StagedReceiver::Outcome StagedReceiver::on_send(std::uint32_t stage, PartyId from,
                                                const PbMessage& message,
                                                const ExternalValidator& external) {
  Outcome out;
  if (stage < 1 || stage > kStageCount) return out;
  PbValidator validator = [&](const TupleValue&, const PbMessage& m) {
    return staged_validate(*crypto_, broadcast_, stage, m, external);
  };
  auto delivery = stages_[stage - 1].on_send(from, message, validator);
  if (!delivery) return out;
  out.ack = delivery->ack;
  if (stage >= 2) {
    StageDelivery d;
    d.kind = stage == 2 ? StageKind::Key : stage == 3 ? StageKind::Lock : StageKind::Commit;
    d.broadcast = broadcast_;
    d.value = delivery->message.value;
    d.proof = *delivery->message.proof.internal;
    out.delivery = std::move(d);
  }
  return out;
}

void StagedReceiver::abandon() {
  for (auto& s : stages_) s.abandon();
}

bool StagedReceiver::stopped() const {
  for (const auto& s : stages_)
    if (!s.stopped()) return false;
  return true;
}

}  // namespace vaba
