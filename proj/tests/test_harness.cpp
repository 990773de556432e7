#include <doctest.h>

#include <string>

#include "vaba/sim/batch.hpp"

using namespace vaba;
using namespace vaba::sim;

namespace {

ExperimentConfig base_config(AdversaryKind kind, std::uint32_t n = 4, std::uint32_t f = 1) {
  ExperimentConfig cfg;
  cfg.n = n;
  cfg.f = f;
  cfg.adversary = kind;
  cfg.validator = "even";
  cfg.seed = 7;
  cfg.runs = 1;
  return cfg;
}

}  // namespace

TEST_CASE("a run is a pure function of config and seed") {
  auto cfg = base_config(AdversaryKind::FairRandom);
  auto a = run_one(cfg, 123, true);
  auto b = run_one(cfg, 123, true);
  CHECK(a.trace == b.trace);
  CHECK(metrics_csv_row(a.metrics) == metrics_csv_row(b.metrics));
  CHECK(a.metrics.words_per_view == b.metrics.words_per_view);

  auto c = run_one(cfg, 124, true);
  CHECK(a.trace != c.trace);
}

TEST_CASE("fault-free runs decide in view 1 within the word budget") {
  auto cfg = base_config(AdversaryKind::FairRandom);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto r = run_one(cfg, seed, false);
    CHECK(r.metrics.ok());
    CHECK(r.metrics.views_to_decide == 1);
    CHECK(r.metrics.quality_flag);
    CHECK(r.metrics.max_words_per_view() <= 13 * cfg.n * cfg.n);
    CHECK(r.metrics.duration > 0.0);
  }
}

TEST_CASE("every adversary strategy still reaches unanimous honest decision") {
  for (auto kind : {AdversaryKind::FairRandom, AdversaryKind::CrashF,
                    AdversaryKind::EquivocateSenders, AdversaryKind::DelayLeader,
                    AdversaryKind::AdaptiveCorruptLeader}) {
    auto cfg = base_config(kind);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto r = run_one(cfg, seed, false);
      INFO(adversary_kind_name(kind), " seed ", seed);
      for (const auto& v : r.metrics.violations) INFO(v);
      CHECK(r.metrics.ok());
    }
  }
}

TEST_CASE("crashed parties do not stop the remaining 2f+1") {
  auto cfg = base_config(AdversaryKind::CrashF);
  auto r = run_one(cfg, 5, false);
  CHECK(r.metrics.ok());
  // only the three surviving parties decide
  CHECK(r.metrics.decide_view.size() == 3);
}

TEST_CASE("the signed validator works end to end") {
  auto cfg = base_config(AdversaryKind::FairRandom);
  cfg.validator = "signed";
  auto r = run_one(cfg, 3, false);
  CHECK(r.metrics.ok());
}

TEST_CASE("an exhausted event budget is reported as a failure") {
  auto cfg = base_config(AdversaryKind::FairRandom);
  cfg.halt.event_budget = 50;
  auto r = run_one(cfg, 1, false);
  CHECK_FALSE(r.metrics.ok());
  CHECK(r.metrics.budget_exhausted);
  CHECK_FALSE(r.metrics.violations.empty());
}

TEST_CASE("trace lines carry the delivery schema") {
  auto cfg = base_config(AdversaryKind::FairRandom);
  auto r = run_one(cfg, 9, true);
  REQUIRE(!r.trace.empty());
  std::string first = r.trace.substr(0, r.trace.find('\n'));
  CHECK(first.rfind("{\"t\":1,\"view\":1,\"kind\":\"", 0) == 0);
  CHECK(first.find("\"words\":1}") != std::string::npos);
  // one line per event
  std::size_t lines = 0;
  for (char ch : r.trace)
    if (ch == '\n') ++lines;
  CHECK(lines == r.metrics.events);
}

TEST_CASE("parallel and serial batches produce byte-identical output") {
  auto cfg = base_config(AdversaryKind::FairRandom);
  cfg.runs = 16;
  auto serial = run_batch(cfg, false, true);
  auto parallel = run_batch(cfg, true, true);
  CHECK(serial.csv == parallel.csv);
  CHECK(serial.trace == parallel.trace);
  CHECK(serial.metrics.size() == 16);
  // per-run trace blocks are tagged with the seed
  CHECK(serial.trace.rfind("{\"run_seed\":7}\n", 0) == 0);
}

TEST_CASE("aggregate summarizes decisions, words and quality") {
  auto cfg = base_config(AdversaryKind::FairRandom);
  cfg.runs = 8;
  auto batch = run_batch(cfg, true, false);
  CHECK(batch.summary.runs == 8);
  CHECK(batch.summary.mean_views_to_decide == doctest::Approx(1.0));
  CHECK(batch.summary.p50_views_to_decide == doctest::Approx(1.0));
  CHECK(batch.summary.p90_views_to_decide == doctest::Approx(1.0));
  CHECK(batch.summary.p_decide_view1 == doctest::Approx(1.0));
  CHECK(batch.summary.quality_rate == doctest::Approx(1.0));
  CHECK(batch.summary.failed_runs == 0);
  CHECK(batch.summary.max_words_per_view_over_n2 <= 14.0);
  CHECK(batch.summary.p90_duration >= batch.summary.mean_duration * 0.5);

  CHECK_THROWS_AS(aggregate({}), std::invalid_argument);

  // quantiles on a mixed synthetic sample
  std::vector<RunMetrics> mixed(10);
  for (std::size_t i = 0; i < 10; ++i) {
    mixed[i].n = 4;
    mixed[i].all_honest_decided = true;
    mixed[i].views_to_decide = i < 9 ? 1 : 3;
    mixed[i].duration = static_cast<double>(i + 1);
  }
  auto s = aggregate(mixed);
  CHECK(s.p50_views_to_decide == doctest::Approx(1.0));
  CHECK(s.p90_views_to_decide == doctest::Approx(1.0));
  CHECK(s.mean_views_to_decide == doctest::Approx(1.2));
  CHECK(s.p90_duration == doctest::Approx(9.0));
}

TEST_CASE("csv rows follow the documented column order") {
  CHECK(metrics_csv_header() ==
        "run_seed,views_to_decide,words_view1,max_words_per_view,decided_value_honest,duration\n");
  RunMetrics m;
  m.seed = 3;
  m.n = 4;
  m.views_to_decide = 2;
  m.words_per_view[1] = 100;
  m.words_per_view[2] = 50;
  m.quality_flag = true;
  m.duration = 1.5;
  CHECK(metrics_csv_row(m) == "3,2,100,100,1,1.500000\n");
}

TEST_CASE("config validation rejects broken setups") {
  ExperimentConfig cfg;
  cfg.n = 4;
  cfg.f = 2;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.f = 1;
  cfg.validator = "nope";
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.validator = "even";
  cfg.runs = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("sweep files parse into validated configs") {
  std::string text = R"([
    {"n": 4, "f": 1, "adversary": "crash", "validator": "even", "seed": 5, "runs": 2},
    {"n": 7, "f": 2, "adversary": "fair", "seed": 1, "runs": 1, "aging_bound": 5000}
  ])";
  auto configs = parse_sweep_file(text);
  REQUIRE(configs.size() == 2);
  CHECK(configs[0].adversary == AdversaryKind::CrashF);
  CHECK(configs[1].n == 7);
  CHECK(configs[1].halt.aging_bound == 5000);
  CHECK_THROWS(parse_sweep_file("{}"));
  CHECK_THROWS(parse_sweep_file("[]"));
  CHECK_THROWS(parse_sweep_file(R"([{"n": 3, "f": 1}])"));
}
