// Test-only brute-force oracle: enumerates delivery schedules of an
// equivocating sender's send envelopes for one provable-broadcast instance
// and reports how many schedules let the sender assemble valid threshold
// signatures on two distinct values. Independent of the simulation harness;
// it drives receivers directly.
#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "vaba/pb.hpp"

namespace vaba_test {

struct ScheduleOracleResult {
  std::size_t schedules = 0;
  std::size_t conflicting = 0;  // schedules yielding proofs for both values
  std::size_t single_proof = 0; // schedules yielding a proof for one value
};

// n=4, f=1, sender = party 3 corrupted. The sender may send either value to
// each of the three honest receivers; honest receivers deliver and ack the
// first send only. The sender itself can sign both values. A schedule is an
// order in which the six possible sends hit the receivers.
inline ScheduleOracleResult enumerate_equivocation_schedules(std::uint64_t seed) {
  using namespace vaba;
  TrustedDealer dealer(4, 1, seed);
  const PartyId sender = 3;
  TupleValue instance = stage_instance(broadcast_id(tbytes("oracle"), sender, 1), 1);
  Value va = tint(100);
  Value vb = tint(200);
  PbValidator accept_all = [](const TupleValue&, const PbMessage&) { return true; };

  // send index -> (receiver, value)
  struct Send {
    PartyId to;
    const Value* value;
  };
  std::vector<Send> sends;
  for (PartyId r = 0; r < 3; ++r) {
    sends.push_back({r, &va});
    sends.push_back({r, &vb});
  }

  ScheduleOracleResult result;
  std::vector<std::size_t> order(sends.size());
  std::iota(order.begin(), order.end(), 0);
  do {
    ++result.schedules;
    std::vector<PbReceiver> receivers;
    for (PartyId r = 0; r < 3; ++r) {
      receivers.emplace_back(instance, r, sender, &dealer.signer(r), &dealer);
    }
    std::vector<SignatureShare> shares_a{dealer.signer(sender).share_sign(
        ack_payload_tuple(instance, va))};
    std::vector<SignatureShare> shares_b{dealer.signer(sender).share_sign(
        ack_payload_tuple(instance, vb))};
    for (std::size_t i : order) {
      const Send& s = sends[i];
      auto d = receivers[s.to].on_send(sender, PbMessage{*s.value, {}}, accept_all);
      if (!d) continue;
      const auto& share = std::get<PbAckPayload>(d->ack.payload).share;
      (s.value == &va ? shares_a : shares_b).push_back(share);
    }
    bool proof_a = shares_a.size() >= 3 &&
                   dealer.threshold_validate(ack_payload_tuple(instance, va),
                                             threshold_sign(shares_a));
    bool proof_b = shares_b.size() >= 3 &&
                   dealer.threshold_validate(ack_payload_tuple(instance, vb),
                                             threshold_sign(shares_b));
    if (proof_a && proof_b) ++result.conflicting;
    if (proof_a != proof_b) ++result.single_proof;
  } while (std::next_permutation(order.begin(), order.end()));
  return result;
}

}  // namespace vaba_test
