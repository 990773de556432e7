// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "vaba/envelope.hpp"

namespace vaba {

// Threshold-coin leader election for one name. Shares accumulate whether or
// not this party has invoked yet; the result resolves once the election was
// invoked locally and f+1 distinct valid shares are present. All resolutions
// for one name agree because the coin is a pure function of the name.
class Election {
 public:
  Election(TupleValue name, ViewNumber view, PartyId self, const PartySigner* signer,
           const TrustedDealer* crypto);

  // Contributes the party's own share locally (no loopback message) and emits
  // share envelopes to the other n-1 parties. Throws std::logic_error on a
  // second invocation. May resolve immediately if enough shares arrived
  // before the invocation.
  std::vector<Envelope> invoke();

  // Accepts a share if it validates for this name and the signer is new.
  // Returns the elected party when the election resolves (at most once).
  std::optional<PartyId> on_share(PartyId from, const CoinShare& share);

  bool invoked() const { return invoked_; }
  const std::optional<PartyId>& result() const { return result_; }
  const TupleValue& name() const { return name_; }

 private:
  std::optional<PartyId> maybe_resolve();

  TupleValue name_;
  ViewNumber view_;
  PartyId self_;
  const PartySigner* signer_;
  const TrustedDealer* crypto_;
  std::map<PartyId, CoinShare> shares_;
  bool invoked_ = false;
  bool reported_ = false;
  std::optional<PartyId> result_;
};

}  // namespace vaba
