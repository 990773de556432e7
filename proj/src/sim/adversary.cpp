// SPDX-License-Identifier: Apache-2.0
#include "vaba/sim/adversary.hpp"

#include <algorithm>

#include "vaba/engine.hpp"

namespace vaba::sim {

std::size_t Adversary::select(const PendingQueue& queue, std::uint64_t,
                              std::mt19937_64& sched_rng, AdversaryContext&) {
  return pick_uniform(queue, sched_rng);
}

namespace {

class FairRandom final : public Adversary {};

// Crashes f parties before the run starts: their machines never speak and
// everything addressed to them vanishes.
class CrashF final : public Adversary {
 public:
  void on_run_start(AdversaryContext& ctx) override {
    for (std::uint32_t i = 0; i < ctx.f; ++i) ctx.request_corrupt(ctx.n - 1 - i, false);
  }
  std::vector<Envelope> filter_output(const Envelope&, AdversaryContext&) override { return {}; }
};

// Corrupted senders equivocate in the first stage of their own broadcast:
// half the parties get the original value, half a forged one. They also
// flood invalid skip shares and a garbage view-change to exercise the
// rejection paths.
class EquivocateSenders final : public Adversary {
 public:
  void on_run_start(AdversaryContext& ctx) override {
    for (std::uint32_t i = 0; i < ctx.f; ++i) ctx.request_corrupt(ctx.n - 1 - i, false);
  }

  std::vector<Envelope> filter_output(const Envelope& env, AdversaryContext& ctx) override {
    std::vector<Envelope> out;
    if (env.kind == MsgKind::PbSend && env.stage == 1 && env.broadcaster == env.from) {
      Envelope forged = env;
      auto& payload = std::get<PbSendPayload>(forged.payload);
      if (env.to >= ctx.n / 2) payload.message.value = tint(800000 + 2 * env.from);
      out.push_back(std::move(forged));
      if (!flooded_.contains(env.from)) {
        flooded_.insert(env.from);
        inject_garbage(env.from, env.view, ctx, out);
      }
      return out;
    }
    // Machines of equivocating parties are absorbed, so nothing else shows up.
    return out;
  }

 private:
  void inject_garbage(PartyId from, ViewNumber view, AdversaryContext& ctx,
                      std::vector<Envelope>& out) {
    ThresholdSignature garbage_sig;
    SignatureShare garbage_share;
    garbage_share.signer = from;
    for (auto& b : garbage_share.tag) b = static_cast<std::uint8_t>(ctx.rng());
    for (auto& b : garbage_share.message_digest) b = static_cast<std::uint8_t>(ctx.rng());
    garbage_sig.evidence.push_back(garbage_share);
    for (PartyId p = 0; p < ctx.n; ++p) {
      Envelope skip_share;
      skip_share.instance = skip_tuple(ctx.base_id, view);
      skip_share.kind = MsgKind::SkipShare;
      skip_share.view = view;
      skip_share.from = from;
      skip_share.to = p;
      skip_share.payload = SkipSharePayload{garbage_share};
      out.push_back(std::move(skip_share));

      Envelope vc;
      vc.instance = tup({ctx.base_id, tbytes("view-change"), tint(view)});
      vc.kind = MsgKind::ViewChange;
      vc.view = view;
      vc.from = from;
      vc.to = p;
      vc.payload = ViewChangePayload{std::nullopt, std::nullopt,
                                     ViewChangeSlot{tint(666), garbage_sig}};
      out.push_back(std::move(vc));
    }
  }

  std::set<PartyId> flooded_;
};

// Watches traffic to learn each view's coin as soon as f+1 shares exist,
// then keeps the leader's broadcast envelopes out of the schedule until
// every honest party has announced skip for that view. f parties are
// corrupted in origin only: they run the protocol honestly on
// adversary-chosen (still valid) inputs.
class DelayLeader final : public Adversary {
 public:
  void on_run_start(AdversaryContext& ctx) override {
    for (std::uint32_t i = 0; i < ctx.f; ++i) {
      PartyId p = ctx.n - 1 - i;
      ctx.request_corrupt(p, false);
      ctx.input_overrides[p] = tint(900000 + 2 * p);
    }
  }

  bool machine_runs(PartyId, const AdversaryContext&) const override { return true; }

  void observe_send(const Envelope& env, AdversaryContext& ctx) override {
    if (env.kind == MsgKind::CoinShare) {
      const auto& share = std::get<CoinSharePayload>(env.payload).share;
      auto& shares = coin_shares_[env.view];
      shares.emplace(share.signer, share);
      if (!leader_.contains(env.view) && shares.size() >= ctx.f + 1) {
        std::vector<CoinShare> collected;
        for (const auto& [_, s] : shares) collected.push_back(s);
        if (auto l = ctx.crypto.coin_toss(election_name(ctx.base_id, env.view), collected))
          leader_[env.view] = *l;
      }
    } else if (env.kind == MsgKind::Skip) {
      skip_senders_[env.view].insert(env.from);
    }
  }

  std::size_t select(const PendingQueue& queue, std::uint64_t, std::mt19937_64& sched_rng,
                     AdversaryContext& ctx) override {
    std::vector<std::size_t> allowed;
    allowed.reserve(queue.size());
    for (std::size_t i = 0; i < queue.size(); ++i) {
      if (!deferred(queue.at(i).env, ctx)) allowed.push_back(i);
    }
    if (allowed.empty()) return queue.oldest_index();
    return allowed[static_cast<std::size_t>(sched_rng() % allowed.size())];
  }

 private:
  bool deferred(const Envelope& env, const AdversaryContext& ctx) const {
    if (env.kind != MsgKind::PbSend && env.kind != MsgKind::PbAck) return false;
    auto it = leader_.find(env.view);
    if (it == leader_.end() || env.broadcaster != it->second) return false;
    auto skips = skip_senders_.find(env.view);
    std::size_t honest_skips = 0;
    if (skips != skip_senders_.end()) {
      for (PartyId p : skips->second)
        if (!ctx.corrupted.contains(p)) ++honest_skips;
    }
    return honest_skips < ctx.n - ctx.corrupted.size();
  }

  std::map<ViewNumber, std::map<PartyId, CoinShare>> coin_shares_;
  std::map<ViewNumber, PartyId> leader_;
  std::map<ViewNumber, std::set<PartyId>> skip_senders_;
};

// Corrupts each view's leader the moment the coin becomes computable from
// in-flight shares, while budget remains. A corrupted leader goes silent and
// its pending traffic is dropped.
class AdaptiveCorruptLeader final : public Adversary {
 public:
  void observe_send(const Envelope& env, AdversaryContext& ctx) override {
    if (env.kind != MsgKind::CoinShare) return;
    const auto& share = std::get<CoinSharePayload>(env.payload).share;
    auto& shares = coin_shares_[env.view];
    shares.emplace(share.signer, share);
    if (resolved_.contains(env.view) || shares.size() < ctx.f + 1) return;
    std::vector<CoinShare> collected;
    for (const auto& [_, s] : shares) collected.push_back(s);
    auto leader = ctx.crypto.coin_toss(election_name(ctx.base_id, env.view), collected);
    if (!leader) return;
    resolved_.insert(env.view);
    ctx.request_corrupt(*leader, true);
  }

  std::vector<Envelope> filter_output(const Envelope&, AdversaryContext&) override { return {}; }

 private:
  std::map<ViewNumber, std::map<PartyId, CoinShare>> coin_shares_;
  std::set<ViewNumber> resolved_;
};

}  // namespace

std::unique_ptr<Adversary> make_adversary(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::FairRandom: return std::make_unique<FairRandom>();
    case AdversaryKind::CrashF: return std::make_unique<CrashF>();
    case AdversaryKind::EquivocateSenders: return std::make_unique<EquivocateSenders>();
    case AdversaryKind::DelayLeader: return std::make_unique<DelayLeader>();
    case AdversaryKind::AdaptiveCorruptLeader: return std::make_unique<AdaptiveCorruptLeader>();
  }
  return std::make_unique<FairRandom>();
}

}  // namespace vaba::sim
