// SPDX-License-Identifier: Apache-2.0
#include "vaba/sim/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <tuple>

namespace vaba::sim {

namespace {

// Ground-truth bookkeeping and invariant checks, fed by engine hooks.
// Deliveries are recorded per (view, broadcaster, stage, value digest) with
// the set of delivering parties; corruption status is applied at check time.
class RunObserver final : public EngineObserver {
 public:
  RunObserver(RunMetrics* metrics, const std::set<PartyId>* corrupted, const std::uint64_t* now,
              std::uint32_t n, std::uint32_t f)
      : m_(metrics), corrupted_(corrupted), now_(now), n_(n), f_(f), max_view_(n, 0),
        snaps_(n) {}

  void attach_parties(std::vector<std::unique_ptr<Party>>* parties) { parties_ = parties; }

  // --- engine hooks -------------------------------------------------------

  void on_view_entered(PartyId p, ViewNumber view) override {
    max_view_[p] = std::max(max_view_[p], view);
    if (parties_) {
      const Party& party = *(*parties_)[p];
      entry_lock_[{p, view}] = party.lock();
      entry_key_view_[{p, view}] = party.key().view;
    }
    if (view >= 3 && !corrupted_->contains(p)) {
      std::size_t advanced = 0;
      for (PartyId q = 0; q < n_; ++q) {
        if (!corrupted_->contains(q) && max_view_[q] >= view - 1) ++advanced;
      }
      if (advanced < f_ + 1) {
        violation("view-skip: party " + std::to_string(p) + " entered view " + std::to_string(view) +
                  " before view " + std::to_string(view - 2) + " completed");
      }
    }
  }

  void on_pb_delivery(PartyId p, ViewNumber view, PartyId broadcaster, std::uint32_t stage,
                      const Value& value) override {
    deliveries_[{view, broadcaster, stage}][value.digest()].insert(p);
  }

  void on_elect_invoked(PartyId p, ViewNumber view) override {
    if (corrupted_->contains(p) || elect_checked_.contains(view)) return;
    elect_checked_.insert(view);
    std::size_t completed = 0;
    for (PartyId bc = 0; bc < n_; ++bc) {
      auto it = deliveries_.find({view, bc, 4});
      if (it == deliveries_.end()) continue;
      for (const auto& [_, parties] : it->second) {
        std::size_t honest = 0;
        for (PartyId q : parties)
          if (!corrupted_->contains(q)) ++honest;
        if (honest >= f_ + 1) {
          ++completed;
          break;
        }
      }
    }
    if (completed < 2 * static_cast<std::size_t>(f_) + 1) {
      violation("pre-election: view " + std::to_string(view) + " elected with only " +
                std::to_string(completed) + " completed broadcasts");
    }
  }

  void on_decide(PartyId p, ViewNumber view, const Value& value) override {
    decisions_.push_back({p, view, value, *now_});
  }

  void on_invariant_violation(PartyId p, const std::string& what) override {
    violation("engine: party " + std::to_string(p) + ": " + what);
  }

  // --- per-event monotonicity --------------------------------------------

  void pre_event(PartyId p) {
    const Party& party = *(*parties_)[p];
    snaps_[p] = Snapshot{party.lock(), party.key().view, party.decided().has_value(),
                         party.current_view()};
  }

  void post_event(PartyId p) {
    const Party& party = *(*parties_)[p];
    const Snapshot& s = snaps_[p];
    if (party.lock() < s.lock) violation("monotonic: LOCK decreased at party " + std::to_string(p));
    if (party.key().view < s.key_view)
      violation("monotonic: KEY view decreased at party " + std::to_string(p));
    if (s.decided && !party.decided().has_value())
      violation("monotonic: decision retracted at party " + std::to_string(p));
    if (party.current_view() < s.view)
      violation("monotonic: view went backwards at party " + std::to_string(p));
    if (party.lock() > s.lock && !corrupted_->contains(p)) locked_views_.insert(party.lock());
  }

  // --- end-of-run checks ---------------------------------------------------

  void finalize(const std::vector<std::unique_ptr<Party>>& parties, const AppValidator& app,
                const std::vector<Value>& inputs) {
    std::vector<PartyId> honest;
    for (PartyId p = 0; p < n_; ++p)
      if (!corrupted_->contains(p)) honest.push_back(p);

    bool all_decided = true;
    std::optional<Value> agreed;
    for (PartyId p : honest) {
      const auto& d = parties[p]->decided();
      if (!d) {
        all_decided = false;
        continue;
      }
      m_->decide_view[p] = parties[p]->decided_view();
      m_->views_to_decide = std::max(m_->views_to_decide, parties[p]->decided_view());
      if (!agreed) {
        agreed = *d;
      } else if (!(*agreed == *d)) {
        violation("agreement: parties decided different values");
      }
      if (!app(*d)) violation("validity: decided value fails the validator");
    }
    m_->all_honest_decided = all_decided && !honest.empty();
    m_->decided_value = agreed;

    if (agreed) {
      for (PartyId p : honest) {
        if (inputs[p] == *agreed) {
          m_->quality_flag = true;
          break;
        }
      }
      for (const auto& d : decisions_) {
        if (!corrupted_->contains(d.party)) {
          m_->last_decide_event = std::max(m_->last_decide_event, d.at_event);
        }
      }
    }

    check_provable_values();
    check_cross_view_progress();
  }

 private:
  struct Snapshot {
    ViewNumber lock = 0;
    ViewNumber key_view = 0;
    bool decided = false;
    ViewNumber view = 0;
  };
  struct Decision {
    PartyId party;
    ViewNumber view;
    Value value;
    std::uint64_t at_event;
  };

  void violation(std::string what) { m_->violations.push_back(std::move(what)); }

  // A value could be threshold-signed for a stage iff its honest deliverers
  // plus every corrupted party reach 2f+1 distinct signers. Per broadcast,
  // at most one value may ever be provable across all four stages, and a
  // delivery at stage j needs f+1 honest deliveries at stage j-1 behind it.
  void check_provable_values() {
    std::map<std::pair<ViewNumber, PartyId>, std::set<Digest>> provable;
    for (const auto& [key, by_value] : deliveries_) {
      auto [view, bc, stage] = key;
      for (const auto& [digest, parties] : by_value) {
        std::set<PartyId> signers = *corrupted_;
        for (PartyId p : parties) signers.insert(p);
        if (signers.size() >= 2 * static_cast<std::size_t>(f_) + 1) {
          provable[{view, bc}].insert(digest);
        }
        if (stage >= 2) {
          std::size_t honest_prev = 0;
          auto prev = deliveries_.find({view, bc, stage - 1});
          if (prev != deliveries_.end()) {
            auto pv = prev->second.find(digest);
            if (pv != prev->second.end()) {
              for (PartyId p : pv->second)
                if (!corrupted_->contains(p)) ++honest_prev;
            }
          }
          bool delivered_by_honest = false;
          for (PartyId p : parties)
            if (!corrupted_->contains(p)) delivered_by_honest = true;
          if (delivered_by_honest && honest_prev < f_ + 1) {
            violation("provability: stage " + std::to_string(stage) + " delivery of broadcast " +
                      std::to_string(bc) + " in view " + std::to_string(view) +
                      " lacks f+1 previous-stage deliveries");
          }
        }
      }
    }
    for (const auto& [key, digests] : provable) {
      if (digests.size() > 1) {
        violation("provability: conflicting provable values for broadcast " +
                  std::to_string(key.second) + " in view " + std::to_string(key.first));
      }
    }
  }

  // A decision in view j forces every honest party entering view j+1 to hold
  // LOCK >= j, and an honest LOCK raised to j forces KEY.view >= j at the
  // same boundary.
  void check_cross_view_progress() {
    std::set<ViewNumber> decided_views;
    for (const auto& d : decisions_) {
      if (!corrupted_->contains(d.party)) decided_views.insert(d.view);
    }
    auto check_entries = [&](const std::set<ViewNumber>& views,
                             const std::map<std::pair<PartyId, ViewNumber>, ViewNumber>& at_entry,
                             const char* what) {
      for (ViewNumber j : views) {
        for (const auto& [key, value] : at_entry) {
          if (key.second != j + 1 || corrupted_->contains(key.first)) continue;
          if (value < j) {
            violation(std::string(what) + " below " + std::to_string(j) + " at party " +
                      std::to_string(key.first) + " entering view " + std::to_string(j + 1));
          }
        }
      }
    };
    check_entries(decided_views, entry_lock_, "lock-progress: LOCK");
    check_entries(locked_views_, entry_key_view_, "key-progress: KEY view");
  }

  RunMetrics* m_;
  const std::set<PartyId>* corrupted_;
  const std::uint64_t* now_;
  std::uint32_t n_;
  std::uint32_t f_;
  std::vector<std::unique_ptr<Party>>* parties_ = nullptr;

  std::map<std::tuple<ViewNumber, PartyId, std::uint32_t>, std::map<Digest, std::set<PartyId>>>
      deliveries_;
  std::set<ViewNumber> elect_checked_;
  std::vector<ViewNumber> max_view_;
  std::vector<Snapshot> snaps_;
  std::vector<Decision> decisions_;
  std::map<std::pair<PartyId, ViewNumber>, ViewNumber> entry_lock_;
  std::map<std::pair<PartyId, ViewNumber>, ViewNumber> entry_key_view_;
  std::set<ViewNumber> locked_views_;
};

std::vector<Value> make_inputs(const ExperimentConfig& cfg, const TrustedDealer& dealer) {
  std::vector<Value> inputs;
  inputs.reserve(cfg.n);
  for (PartyId i = 0; i < cfg.n; ++i) {
    if (cfg.validator == "even") {
      inputs.push_back(tint(1000 + 2 * i));
    } else if (cfg.validator == "signed") {
      inputs.push_back(dealer.make_tagged_value(1000 + i));
    } else {
      inputs.push_back(tint(1000 + i));
    }
  }
  return inputs;
}

void append_trace_line(std::string& trace, std::uint64_t t, const Envelope& env) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "{\"t\":%llu,\"view\":%llu,\"kind\":\"%s\",\"from\":%u,\"to\":%u,\"words\":%d}\n",
                static_cast<unsigned long long>(t), static_cast<unsigned long long>(env.view),
                msg_kind_name(env.kind), env.from, env.to, env.words);
  trace += buf;
}

}  // namespace

RunResult run_one(const ExperimentConfig& cfg, std::uint64_t run_seed, bool capture_trace) {
  cfg.validate();
  RunResult result;
  RunMetrics& m = result.metrics;
  m.seed = run_seed;
  m.n = cfg.n;
  m.f = cfg.f;

  TrustedDealer dealer(cfg.n, cfg.f, run_seed);
  TupleValue base = tbytes("vaba");
  AppValidator app = make_app_validator(cfg.validator, &dealer);

  std::mt19937_64 sched_rng(splitmix64(run_seed ^ 0x7363686564ULL));
  auto adversary = make_adversary(cfg.adversary);

  PendingQueue queue;
  std::uint64_t now = 0;
  std::uint64_t seq = 0;

  AdversaryContext ctx{PublicCrypto(&dealer),
                       base,
                       cfg.n,
                       cfg.f,
                       std::mt19937_64(splitmix64(run_seed ^ 0x616476ULL)),
                       {},
                       {},
                       nullptr,
                       nullptr};
  ctx.request_corrupt = [&](PartyId p, bool drop_pending) {
    if (p >= cfg.n || ctx.corrupted.contains(p) || ctx.corrupted.size() >= cfg.f) return false;
    ctx.corrupted.insert(p);
    if (drop_pending) queue.remove_from(p);
    return true;
  };
  ctx.corrupted_signer = [&](PartyId p) -> const PartySigner* {
    return ctx.corrupted.contains(p) ? &dealer.signer(p) : nullptr;
  };

  adversary->on_run_start(ctx);

  std::vector<Value> inputs = make_inputs(cfg, dealer);
  for (const auto& [p, v] : ctx.input_overrides) inputs[p] = v;

  RunObserver observer(&m, &ctx.corrupted, &now, cfg.n, cfg.f);
  std::vector<std::unique_ptr<Party>> parties;
  parties.reserve(cfg.n);
  for (PartyId i = 0; i < cfg.n; ++i) {
    parties.push_back(std::make_unique<Party>(base, i, &dealer.signer(i), &dealer, inputs[i], app,
                                              &observer));
  }
  observer.attach_parties(&parties);

  auto enqueue = [&](Envelope env, bool from_corrupted) {
    env.words = 1;
    if (!from_corrupted) m.words_per_view[env.view] += 1;
    adversary->observe_send(env, ctx);
    queue.push(PendingEnvelope{std::move(env), seq++, now, from_corrupted});
  };
  auto emit_outputs = [&](PartyId p, std::vector<Envelope>&& outs) {
    bool corrupt = ctx.corrupted.contains(p);
    for (auto& e : outs) {
      if (corrupt) {
        for (auto& r : adversary->filter_output(e, ctx)) enqueue(std::move(r), true);
      } else {
        enqueue(std::move(e), false);
      }
    }
  };

  for (PartyId i = 0; i < cfg.n; ++i) emit_outputs(i, parties[i]->start());

  auto all_honest_decided = [&]() {
    bool any_honest = false;
    for (PartyId p = 0; p < cfg.n; ++p) {
      if (ctx.corrupted.contains(p)) continue;
      any_honest = true;
      if (!parties[p]->decided()) return false;
    }
    return any_honest;
  };

  while (true) {
    if (all_honest_decided()) break;
    if (queue.empty()) {
      m.violations.push_back("termination: run stalled with undecided honest parties");
      break;
    }
    if (now >= cfg.halt.event_budget) {
      m.budget_exhausted = true;
      m.violations.push_back("termination: event budget exhausted before all honest parties decided");
      break;
    }
    std::size_t idx;
    const PendingEnvelope& oldest = queue.at(queue.oldest_index());
    if (now - oldest.sent_at > cfg.halt.aging_bound) {
      idx = queue.oldest_index();
    } else {
      idx = adversary->select(queue, now, sched_rng, ctx);
    }
    PendingEnvelope pe = queue.pop(idx);
    ++now;
    m.max_delay = std::max(m.max_delay, now - pe.sent_at);
    if (capture_trace) append_trace_line(result.trace, now, pe.env);

    PartyId dst = pe.env.to;
    if (dst >= cfg.n) continue;
    if (ctx.corrupted.contains(dst) && !adversary->machine_runs(dst, ctx)) {
      for (auto& r : adversary->on_deliver_to_corrupted(pe.env, ctx)) enqueue(std::move(r), true);
      continue;
    }
    observer.pre_event(dst);
    auto outs = parties[dst]->handle(pe.env);
    observer.post_event(dst);
    emit_outputs(dst, std::move(outs));
  }

  m.events = now;
  observer.finalize(parties, app, inputs);
  if (m.max_delay > 0 && m.last_decide_event > 0) {
    m.duration = static_cast<double>(m.last_decide_event) / static_cast<double>(m.max_delay);
  }
  return result;
}

}  // namespace vaba::sim
