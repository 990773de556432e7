// SPDX-License-Identifier: Apache-2.0
#include "vaba/engine.hpp"

#include <cassert>

namespace vaba {

namespace {
constexpr std::size_t kKeySlot = 0;
constexpr std::size_t kLockSlot = 1;
constexpr std::size_t kCommitSlot = 2;
}  // namespace

Party::Party(TupleValue base_id, PartyId self, const PartySigner* signer,
             const TrustedDealer* crypto, Value input, AppValidator app_validator,
             EngineObserver* observer)
    : base_(std::move(base_id)), self_(self), signer_(signer), crypto_(crypto),
      n_(crypto->n()), f_(crypto->f()), input_(std::move(input)),
      app_validator_(std::move(app_validator)), observer_(observer) {
  key_ = KeyRecord{0, input_, std::nullopt};
}

std::vector<Envelope> Party::start() {
  std::vector<Envelope> out;
  enter_view(1, out);
  return out;
}

std::vector<Envelope> Party::handle(const Envelope& env) {
  std::vector<Envelope> out;
  if (env.to != self_ || view_ == 0) return out;
  dispatch(env, out);
  return out;
}

void Party::enter_view(ViewNumber view, std::vector<Envelope>& out) {
  view_ = view;
  ViewState vs;
  vs.receivers.reserve(n_);
  for (PartyId k = 0; k < n_; ++k) {
    vs.receivers.emplace_back(broadcast_id(base_, k, view), self_, k, signer_, crypto_);
  }
  vs.election.emplace(election_name(base_, view), view, self_, signer_, crypto_);
  for (auto& table : vs.deliveries) table.assign(n_, std::nullopt);
  vs.own.emplace(broadcast_id(base_, self_, view), self_, n_, crypto_);
  views_.emplace(view, std::move(vs));
  // Echo service is kept for the previous view only.
  views_.erase(views_.begin(), views_.lower_bound(view >= 2 ? view - 1 : 1));
  if (observer_) observer_->on_view_entered(self_, view);

  auto sends = state().own->start(key_.value, KeyProof{key_.view, key_.proof});
  out.insert(out.end(), sends.begin(), sends.end());

  if (auto it = future_.find(view); it != future_.end()) {
    std::vector<Envelope> drained = std::move(it->second);
    future_.erase(it);
    for (const auto& env : drained) dispatch(env, out);
  }
}

void Party::dispatch(const Envelope& env, std::vector<Envelope>& out) {
  if (env.view > view_) {
    future_[env.view].push_back(env);
    return;
  }
  switch (env.kind) {
    case MsgKind::PbSend: handle_pb_send(env, out); break;
    case MsgKind::PbAck: handle_pb_ack(env, out); break;
    case MsgKind::Done: handle_done(env, out); break;
    case MsgKind::SkipShare: handle_skip_share(env, out); break;
    case MsgKind::Skip: handle_skip(env, out); break;
    case MsgKind::CoinShare: handle_coin_share(env, out); break;
    case MsgKind::ViewChange: handle_view_change(env, out); break;
  }
}

void Party::handle_pb_send(const Envelope& env, std::vector<Envelope>& out) {
  if (env.view != view_ || env.broadcaster >= n_) return;
  const auto* payload = std::get_if<PbSendPayload>(&env.payload);
  if (!payload) return;
  ViewNumber proposal_view = env.view;
  ExternalValidator external = [this, proposal_view](const TupleValue&, const Value& v,
                                                     const KeyProof& key) {
    return validate_proposal(proposal_view, v, key);
  };
  auto outcome =
      state().receivers[env.broadcaster].on_send(env.stage, env.from, payload->message, external);
  if (outcome.ack) {
    if (observer_)
      observer_->on_pb_delivery(self_, env.view, env.broadcaster, env.stage,
                                payload->message.value);
    out.push_back(*outcome.ack);
  }
  if (outcome.delivery) {
    const StageDelivery& d = *outcome.delivery;
    std::size_t slot = d.kind == StageKind::Key ? kKeySlot
                       : d.kind == StageKind::Lock ? kLockSlot
                                                   : kCommitSlot;
    state().deliveries[slot][env.broadcaster] = ViewChangeSlot{d.value, d.proof};
    if (observer_) observer_->on_stage_delivery(self_, env.view, env.broadcaster, d);
  }
}

void Party::handle_pb_ack(const Envelope& env, std::vector<Envelope>& out) {
  if (env.view != view_ || env.broadcaster != self_) return;
  const auto* payload = std::get_if<PbAckPayload>(&env.payload);
  if (!payload) return;
  ViewState& vs = state();
  auto outcome = vs.own->on_ack(env.stage, env.from, payload->share);
  out.insert(out.end(), outcome.envelopes.begin(), outcome.envelopes.end());
  if (outcome.completion && !vs.skip) {
    broadcast_to_all(tup({base_, tbytes("done"), tint(view_)}), MsgKind::Done, view_,
                     DonePayload{vs.own->value(), vs.own->external_proof(), *outcome.completion},
                     out);
  }
}

void Party::handle_done(const Envelope& env, std::vector<Envelope>& out) {
  if (env.view != view_) return;
  const auto* payload = std::get_if<DonePayload>(&env.payload);
  if (!payload) return;
  ViewState& vs = state();
  if (vs.done_from.contains(env.from)) return;
  TupleValue completion_tuple =
      ack_payload_tuple(stage_instance(broadcast_id(base_, env.from, view_), 4), payload->value);
  if (!crypto_->threshold_validate(completion_tuple, payload->completion)) return;
  vs.done_from.insert(env.from);
  if (vs.done_from.size() == crypto_->signature_threshold() && !vs.skip_share_sent) {
    vs.skip_share_sent = true;
    SignatureShare share = signer_->share_sign(skip_tuple(base_, view_));
    broadcast_to_all(skip_tuple(base_, view_), MsgKind::SkipShare, view_,
                     SkipSharePayload{share}, out);
  }
}

void Party::handle_skip_share(const Envelope& env, std::vector<Envelope>& out) {
  if (env.view != view_) return;
  const auto* payload = std::get_if<SkipSharePayload>(&env.payload);
  if (!payload) return;
  ViewState& vs = state();
  if (vs.skip_shares.contains(env.from)) return;
  if (!crypto_->share_validate(skip_tuple(base_, view_), env.from, payload->share)) return;
  vs.skip_shares.emplace(env.from, payload->share);
  if (vs.skip_shares.size() == crypto_->signature_threshold() && !vs.skip_sent) {
    std::vector<SignatureShare> collected;
    collected.reserve(vs.skip_shares.size());
    for (const auto& [_, s] : vs.skip_shares) collected.push_back(s);
    vs.skip_sent = true;
    broadcast_to_all(skip_tuple(base_, view_), MsgKind::Skip, view_,
                     SkipPayload{threshold_sign(collected)}, out);
  }
}

void Party::handle_skip(const Envelope& env, std::vector<Envelope>& out) {
  const auto* payload = std::get_if<SkipPayload>(&env.payload);
  if (!payload) return;
  if (!crypto_->threshold_validate(skip_tuple(base_, env.view), payload->sig)) return;
  auto it = views_.find(env.view);
  if (it == views_.end()) return;  // beyond the echo retention window
  ViewState& vs = it->second;
  if (!vs.skip_sent) {
    vs.skip_sent = true;
    broadcast_to_all(skip_tuple(base_, env.view), MsgKind::Skip, env.view, SkipPayload{payload->sig},
                     out);
  }
  if (!vs.skip) set_skip(env.view, payload->sig, out);
}

void Party::set_skip(ViewNumber view, const ThresholdSignature&, std::vector<Envelope>& out) {
  ViewState& vs = views_.at(view);
  vs.skip = true;
  if (view != view_ || vs.phase != ViewState::Phase::Broadcast) return;
  vs.phase = ViewState::Phase::Election;
  for (auto& r : vs.receivers) r.abandon();
  vs.own->abandon();
  if (observer_) observer_->on_elect_invoked(self_, view);
  auto shares = vs.election->invoke();
  out.insert(out.end(), shares.begin(), shares.end());
  if (auto leader = vs.election->result()) on_leader_resolved(view, *leader, out);
}

void Party::handle_coin_share(const Envelope& env, std::vector<Envelope>& out) {
  if (env.view != view_) return;
  const auto* payload = std::get_if<CoinSharePayload>(&env.payload);
  if (!payload) return;
  auto leader = state().election->on_share(env.from, payload->share);
  if (leader) on_leader_resolved(env.view, *leader, out);
}

void Party::on_leader_resolved(ViewNumber view, PartyId leader, std::vector<Envelope>& out) {
  assert(leaders_.size() + 1 == view);
  leaders_.push_back(leader);
  if (observer_) observer_->on_leader_resolved(self_, view, leader);
  ViewState& vs = views_.at(view);
  vs.phase = ViewState::Phase::ViewChange;
  ViewChangePayload payload{vs.deliveries[kKeySlot][leader], vs.deliveries[kLockSlot][leader],
                            vs.deliveries[kCommitSlot][leader]};
  broadcast_to_all(tup({base_, tbytes("view-change"), tint(view)}), MsgKind::ViewChange, view,
                   std::move(payload), out);
  std::vector<Envelope> pending = std::move(vs.pending_view_change);
  vs.pending_view_change.clear();
  for (const auto& e : pending) process_view_change(e, out);
}

void Party::handle_view_change(const Envelope& env, std::vector<Envelope>& out) {
  // Leader known for every view this party has finished electing; a message
  // for the current view arriving before the local election resolves waits.
  if (env.view > leaders_.size()) {
    if (env.view == view_) views_.at(view_).pending_view_change.push_back(env);
    return;
  }
  process_view_change(env, out);
}

void Party::process_view_change(const Envelope& env, std::vector<Envelope>& out) {
  const auto* payload = std::get_if<ViewChangePayload>(&env.payload);
  if (!payload) return;
  ViewNumber j = env.view;
  PartyId leader = leaders_[j - 1];
  TupleValue bc = broadcast_id(base_, leader, j);

  if (payload->commit) {
    TupleValue t = ack_payload_tuple(stage_instance(bc, 3), payload->commit->value);
    if (crypto_->threshold_validate(t, payload->commit->proof) && !decided_) {
      decided_ = payload->commit->value;
      decided_view_ = j;
      if (observer_) observer_->on_decide(self_, j, *decided_);
    }
  }
  if (payload->lock && j > lock_) {
    TupleValue t = ack_payload_tuple(stage_instance(bc, 2), payload->lock->value);
    if (crypto_->threshold_validate(t, payload->lock->proof)) lock_ = j;
  }
  if (payload->key) {
    TupleValue t = ack_payload_tuple(stage_instance(bc, 1), payload->key->value);
    if (crypto_->threshold_validate(t, payload->key->proof)) {
      if (j > key_.view) {
        key_ = KeyRecord{j, payload->key->value, payload->key->proof};
      } else if (j == key_.view && !(payload->key->value == key_.value) && observer_) {
        // Two valid keys for one view must carry the same value.
        observer_->on_invariant_violation(self_, "conflicting key slots in view " +
                                                     std::to_string(j));
      }
    }
  }

  if (j == view_) {
    ViewState& vs = views_.at(j);
    vs.view_change_from.insert(env.from);
    maybe_advance(out);
  }
}

void Party::maybe_advance(std::vector<Envelope>& out) {
  ViewState& vs = state();
  if (vs.phase != ViewState::Phase::ViewChange) return;
  if (vs.view_change_from.size() < crypto_->signature_threshold()) return;
  enter_view(view_ + 1, out);
}

bool Party::validate_proposal(ViewNumber proposal_view, const Value& value,
                              const KeyProof& key) const {
  if (!app_validator_(value)) return false;
  if (key.view == 0) {
    if (key.sig) return false;
  } else {
    // An honest key always comes from an earlier, locally elected view.
    if (key.view >= proposal_view || key.view > leaders_.size()) return false;
    if (!key.sig) return false;
    PartyId l = leaders_[key.view - 1];
    TupleValue t =
        ack_payload_tuple(stage_instance(broadcast_id(base_, l, key.view), 1), value);
    if (!crypto_->threshold_validate(t, *key.sig)) return false;
  }
  return key.view >= lock_;
}

std::optional<PartyId> Party::leader_of(ViewNumber view) const {
  if (view == 0 || view > leaders_.size()) return std::nullopt;
  return leaders_[view - 1];
}

void Party::broadcast_to_all(TupleValue instance, MsgKind kind, ViewNumber view,
                             EnvelopePayload payload, std::vector<Envelope>& out) {
  for (PartyId p = 0; p < n_; ++p) {
    Envelope env;
    env.instance = instance;
    env.kind = kind;
    env.view = view;
    env.from = self_;
    env.to = p;
    env.payload = payload;
    out.push_back(std::move(env));
  }
}

}  // namespace vaba
