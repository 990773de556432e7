// SPDX-License-Identifier: Apache-2.0
#include "vaba/election.hpp"

#include <stdexcept>

namespace vaba {

Election::Election(TupleValue name, ViewNumber view, PartyId self, const PartySigner* signer,
                   const TrustedDealer* crypto)
    : name_(std::move(name)), view_(view), self_(self), signer_(signer), crypto_(crypto) {}

std::vector<Envelope> Election::invoke() {
  if (invoked_) throw std::logic_error("election already invoked");
  invoked_ = true;
  CoinShare own = signer_->coin_share(name_);
  shares_.emplace(self_, own);
  std::vector<Envelope> out;
  out.reserve(crypto_->n() - 1);
  for (PartyId p = 0; p < crypto_->n(); ++p) {
    if (p == self_) continue;
    Envelope env;
    env.instance = name_;
    env.kind = MsgKind::CoinShare;
    env.view = view_;
    env.from = self_;
    env.to = p;
    env.payload = CoinSharePayload{own};
    out.push_back(std::move(env));
  }
  maybe_resolve();
  return out;
}

std::optional<PartyId> Election::on_share(PartyId from, const CoinShare& share) {
  if (!shares_.contains(from) && crypto_->coin_share_validate(name_, from, share)) {
    shares_.emplace(from, share);
  }
  return maybe_resolve();
}

std::optional<PartyId> Election::maybe_resolve() {
  if (reported_ || !invoked_ || shares_.size() < crypto_->coin_threshold()) return std::nullopt;
  std::vector<CoinShare> collected;
  collected.reserve(shares_.size());
  for (const auto& [_, s] : shares_) collected.push_back(s);
  result_ = crypto_->coin_toss(name_, collected);
  reported_ = true;
  return result_;
}

}  // namespace vaba
