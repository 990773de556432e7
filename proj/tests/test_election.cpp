#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "vaba/election.hpp"

using namespace vaba;

namespace {

struct ElectionFixture {
  TrustedDealer dealer{4, 1, 5};
  TupleValue name = election_name(tbytes("el"), 1);
  std::vector<Election> elections;

  ElectionFixture() {
    for (PartyId i = 0; i < 4; ++i) {
      elections.emplace_back(name, 1, i, &dealer.signer(i), &dealer);
    }
  }
};

}  // namespace

TEST_CASE("f+1 invocations resolve every invoking party to the same leader") {
  ElectionFixture fx;
  auto env0 = fx.elections[0].invoke();
  auto env1 = fx.elections[1].invoke();
  CHECK(env0.size() == 3);  // own share stays local
  for (const auto& e : env0) CHECK(e.kind == MsgKind::CoinShare);

  // cross-deliver the two parties' shares
  std::optional<PartyId> r0, r1;
  for (const auto& e : env1) {
    if (e.to == 0) r0 = fx.elections[0].on_share(e.from, std::get<CoinSharePayload>(e.payload).share);
  }
  for (const auto& e : env0) {
    if (e.to == 1) r1 = fx.elections[1].on_share(e.from, std::get<CoinSharePayload>(e.payload).share);
  }
  REQUIRE(r0.has_value());
  REQUIRE(r1.has_value());
  CHECK(*r0 == *r1);
  CHECK(*r0 < 4);
  CHECK(fx.elections[0].result() == fx.elections[1].result());
}

TEST_CASE("the second distinct valid share resolves, duplicates do not") {
  ElectionFixture fx;
  fx.elections[0].invoke();  // own share = 1 of 2 needed
  CoinShare dup = fx.dealer.signer(0).coin_share(fx.name);
  CHECK_FALSE(fx.elections[0].on_share(0, dup).has_value());  // own signer again
  CoinShare other_election = fx.dealer.signer(2).coin_share(election_name(tbytes("el"), 9));
  CHECK_FALSE(fx.elections[0].on_share(2, other_election).has_value());  // wrong name
  CoinShare good = fx.dealer.signer(2).coin_share(fx.name);
  CHECK(fx.elections[0].on_share(2, good).has_value());
}

TEST_CASE("shares that arrive before the invocation count on invoke") {
  ElectionFixture fx;
  CHECK_FALSE(fx.elections[3].on_share(0, fx.dealer.signer(0).coin_share(fx.name)).has_value());
  CHECK_FALSE(fx.elections[3].on_share(1, fx.dealer.signer(1).coin_share(fx.name)).has_value());
  fx.elections[3].invoke();
  CHECK(fx.elections[3].result().has_value());
}

TEST_CASE("double invocation is rejected") {
  ElectionFixture fx;
  fx.elections[0].invoke();
  CHECK_THROWS_AS(fx.elections[0].invoke(), std::logic_error);
}

TEST_CASE("guessing the leader before any share exists does not beat chance") {
  // A predictor that sees the election name but holds no coin key material;
  // its hit rate must stay within noise of 1/n.
  TrustedDealer dealer(4, 1, 77);
  const int trials = 1500;
  int hits = 0;
  std::mt19937_64 predictor(999);
  for (int t = 0; t < trials; ++t) {
    TupleValue name = election_name(tbytes("pred"), static_cast<ViewNumber>(t + 1));
    PartyId guess = static_cast<PartyId>(predictor() % 4);
    Election e(name, 1, 2, &dealer.signer(2), &dealer);
    e.invoke();
    auto result = e.on_share(3, dealer.signer(3).coin_share(name));
    REQUIRE(result.has_value());
    if (guess == *result) ++hits;
  }
  CHECK(static_cast<double>(hits) / trials <= 0.25 + 0.05);
}

TEST_CASE("elections over distinct names spread uniformly across parties") {
  TrustedDealer dealer(4, 1, 31);
  const int trials = 1000;
  std::array<int, 4> counts{};
  for (int t = 0; t < trials; ++t) {
    TupleValue name = election_name(tbytes("uni"), static_cast<ViewNumber>(t + 1));
    Election e(name, 1, 0, &dealer.signer(0), &dealer);
    e.invoke();
    auto result = e.on_share(1, dealer.signer(1).coin_share(name));
    REQUIRE(result.has_value());
    counts[*result]++;
  }
  double p = 0.25;
  double sigma = std::sqrt(p * (1 - p) / trials);
  for (int c : counts) {
    CHECK(std::abs(static_cast<double>(c) / trials - p) <= 3 * sigma);
  }
}
