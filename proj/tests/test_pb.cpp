#include <doctest.h>

#include <stdexcept>

#include "pb_schedule_oracle.hpp"
#include "vaba/pb.hpp"

using namespace vaba;

namespace {

struct PbFixture {
  TrustedDealer dealer{4, 1, 7};
  PartyId sender = 0;
  TupleValue instance = stage_instance(broadcast_id(tbytes("pb"), 0, 1), 1);
  PbSender pb{instance, sender, 4, &dealer};
  PbValidator accept = [](const TupleValue&, const PbMessage&) { return true; };
  PbValidator reject = [](const TupleValue&, const PbMessage&) { return false; };

  PbReceiver receiver(PartyId r) {
    return PbReceiver(instance, r, sender, &dealer.signer(r), &dealer);
  }
  SignatureShare ack_share(PartyId r, const Value& v) {
    return dealer.signer(r).share_sign(ack_payload_tuple(instance, v));
  }
};

}  // namespace

TEST_CASE("sender resolves on the third distinct valid ack and not before") {
  PbFixture fx;
  auto sends = fx.pb.broadcast(PbMessage{tint(8), {}});
  CHECK(sends.size() == 4);
  for (const auto& e : sends) {
    CHECK(e.kind == MsgKind::PbSend);
    CHECK(e.from == 0);
  }

  CHECK_FALSE(fx.pb.on_ack(0, fx.ack_share(0, tint(8))).has_value());
  CHECK_FALSE(fx.pb.on_ack(1, fx.ack_share(1, tint(8))).has_value());
  CHECK_FALSE(fx.pb.completed());
  auto proof = fx.pb.on_ack(2, fx.ack_share(2, tint(8)));
  REQUIRE(proof.has_value());
  CHECK(fx.pb.completed());
  CHECK(fx.dealer.threshold_validate(ack_payload_tuple(fx.instance, tint(8)), *proof));
}

TEST_CASE("duplicate and invalid acks never count") {
  PbFixture fx;
  fx.pb.broadcast(PbMessage{tint(8), {}});
  CHECK_FALSE(fx.pb.on_ack(0, fx.ack_share(0, tint(8))).has_value());
  // same signer again
  CHECK_FALSE(fx.pb.on_ack(0, fx.ack_share(0, tint(8))).has_value());
  // share on the wrong value
  CHECK_FALSE(fx.pb.on_ack(1, fx.ack_share(1, tint(9))).has_value());
  // share claimed by the wrong party
  CHECK_FALSE(fx.pb.on_ack(2, fx.ack_share(1, tint(8))).has_value());
  // still only one real share in the set
  CHECK_FALSE(fx.pb.on_ack(1, fx.ack_share(1, tint(8))).has_value());
  CHECK(fx.pb.on_ack(2, fx.ack_share(2, tint(8))).has_value());
}

TEST_CASE("double broadcast is rejected") {
  PbFixture fx;
  fx.pb.broadcast(PbMessage{tint(8), {}});
  CHECK_THROWS_AS(fx.pb.broadcast(PbMessage{tint(8), {}}), std::logic_error);
}

TEST_CASE("receiver delivers the first valid send exactly once") {
  PbFixture fx;
  auto r = fx.receiver(1);
  auto d = r.on_send(0, PbMessage{tint(8), {}}, fx.accept);
  REQUIRE(d.has_value());
  CHECK(r.delivered());
  CHECK(d->ack.kind == MsgKind::PbAck);
  CHECK(d->ack.to == 0);
  CHECK(fx.dealer.share_validate(ack_payload_tuple(fx.instance, tint(8)), 1,
                                 std::get<PbAckPayload>(d->ack.payload).share));
  // a second send on the same instance is ignored, same or different value
  CHECK_FALSE(r.on_send(0, PbMessage{tint(8), {}}, fx.accept).has_value());
  CHECK_FALSE(r.on_send(0, PbMessage{tint(9), {}}, fx.accept).has_value());
}

TEST_CASE("delivery happens only when the validator accepts") {
  PbFixture fx;
  auto r = fx.receiver(1);
  CHECK_FALSE(r.on_send(0, PbMessage{tint(8), {}}, fx.reject).has_value());
  CHECK_FALSE(r.delivered());
  // a rejected send does not burn the instance
  CHECK(r.on_send(0, PbMessage{tint(8), {}}, fx.accept).has_value());
}

TEST_CASE("sends from anyone but the designated sender are ignored") {
  PbFixture fx;
  auto r = fx.receiver(1);
  CHECK_FALSE(r.on_send(2, PbMessage{tint(8), {}}, fx.accept).has_value());
  CHECK(r.on_send(0, PbMessage{tint(8), {}}, fx.accept).has_value());
}

TEST_CASE("abandon stops delivery and is idempotent") {
  PbFixture fx;
  auto r = fx.receiver(2);
  r.abandon();
  r.abandon();
  CHECK(r.stopped());
  CHECK_FALSE(r.on_send(0, PbMessage{tint(8), {}}, fx.accept).has_value());
  CHECK_FALSE(r.delivered());
}

TEST_CASE("abandon after delivery keeps the delivery") {
  PbFixture fx;
  auto r = fx.receiver(2);
  CHECK(r.on_send(0, PbMessage{tint(8), {}}, fx.accept).has_value());
  r.abandon();
  CHECK(r.delivered());
  CHECK(r.stopped());
}

TEST_CASE("a fault-free instance costs exactly 2n messages") {
  PbFixture fx;
  std::size_t envelopes = 0;
  auto sends = fx.pb.broadcast(PbMessage{tint(8), {}});
  envelopes += sends.size();
  for (const auto& s : sends) {
    auto r = fx.receiver(s.to);
    auto d = r.on_send(s.from, std::get<PbSendPayload>(s.payload).message, fx.accept);
    REQUIRE(d.has_value());
    envelopes += 1;
    fx.pb.on_ack(s.to, std::get<PbAckPayload>(d->ack.payload).share);
  }
  CHECK(envelopes == 8);
  CHECK(fx.pb.completed());
}

TEST_CASE("envelopes dump to the documented wire shape") {
  PbFixture fx;
  auto sends = fx.pb.broadcast(PbMessage{tint(8), {}});
  std::string json = envelope_to_json(sends[2]);
  CHECK(json.find("\"kind\":\"send\"") != std::string::npos);
  CHECK(json.find("\"from\":0") != std::string::npos);
  CHECK(json.find("\"to\":2") != std::string::npos);
  CHECK(json.find("\"words\":1") != std::string::npos);
  CHECK(json.find("\"instance\":[[\"") != std::string::npos);  // nested tuple as array

  auto r = fx.receiver(1);
  auto d = r.on_send(0, PbMessage{tint(8), {}}, fx.accept);
  REQUIRE(d.has_value());
  CHECK(envelope_to_json(d->ack).find("\"kind\":\"ack\"") != std::string::npos);
}

TEST_CASE("no schedule of an equivocating sender yields proofs for two values") {
  auto result = vaba_test::enumerate_equivocation_schedules(7);
  CHECK(result.schedules == 720);
  CHECK(result.conflicting == 0);
  // sanity: the enumeration is not vacuous, plenty of schedules prove one value
  CHECK(result.single_proof > 0);
}
