// SPDX-License-Identifier: Apache-2.0
#include "vaba/envelope.hpp"

#include <nlohmann/json.hpp>

namespace vaba {

const char* msg_kind_name(MsgKind kind) {
  switch (kind) {
    case MsgKind::PbSend: return "send";
    case MsgKind::PbAck: return "ack";
    case MsgKind::Done: return "done";
    case MsgKind::SkipShare: return "skip-share";
    case MsgKind::Skip: return "skip";
    case MsgKind::CoinShare: return "coin-share";
    case MsgKind::ViewChange: return "view-change";
  }
  return "?";
}

TupleValue broadcast_id(const TupleValue& base, PartyId broadcaster, ViewNumber view) {
  return tup({base, tint(broadcaster), tint(view)});
}

TupleValue stage_instance(const TupleValue& broadcast, std::uint32_t stage) {
  return tup({broadcast, tint(stage)});
}

TupleValue ack_payload_tuple(const TupleValue& pb_instance, const Value& value) {
  return tup({pb_instance, value});
}

TupleValue skip_tuple(const TupleValue& base, ViewNumber view) {
  return tup({base, tbytes("skip"), tint(view)});
}

TupleValue election_name(const TupleValue& base, ViewNumber view) {
  return tup({base, tint(view)});
}

namespace {

nlohmann::json tuple_to_json(const TupleValue& tv) {
  if (tv.is_integer()) return tv.as_integer();
  if (tv.is_bytes()) return hex_encode(tv.as_bytes());
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : tv.as_tuple()) arr.push_back(tuple_to_json(e));
  return arr;
}

nlohmann::json payload_summary(const Envelope& env) {
  nlohmann::json j;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PbSendPayload>) {
          j["value"] = tuple_to_json(p.message.value);
          j["key_view"] = p.message.proof.external.view;
          j["chained"] = p.message.proof.internal.has_value();
        } else if constexpr (std::is_same_v<T, PbAckPayload>) {
          j["signer"] = p.share.signer;
        } else if constexpr (std::is_same_v<T, DonePayload>) {
          j["value"] = tuple_to_json(p.value);
        } else if constexpr (std::is_same_v<T, SkipSharePayload>) {
          j["signer"] = p.share.signer;
        } else if constexpr (std::is_same_v<T, SkipPayload>) {
          j["shares"] = p.sig.evidence.size();
        } else if constexpr (std::is_same_v<T, CoinSharePayload>) {
          j["signer"] = p.share.signer;
        } else if constexpr (std::is_same_v<T, ViewChangePayload>) {
          j["key"] = p.key.has_value();
          j["lock"] = p.lock.has_value();
          j["commit"] = p.commit.has_value();
        }
      },
      env.payload);
  return j;
}

}  // namespace

std::string envelope_to_json(const Envelope& env) {
  nlohmann::json j;
  j["instance"] = tuple_to_json(env.instance);
  j["kind"] = msg_kind_name(env.kind);
  j["from"] = env.from;
  j["to"] = env.to;
  j["payload"] = payload_summary(env);
  j["words"] = env.words;
  return j.dump();
}

}  // namespace vaba
