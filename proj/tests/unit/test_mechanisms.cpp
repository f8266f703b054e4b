#include <doctest.h>

#include "oracles.hpp"
#include "walras/rng.hpp"
#include "walras/fixtures.hpp"
#include "walras/property_suites.hpp"

using namespace walras;

TEST_CASE("payments follow each rule's definition") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const BidProfile p = sample_gs_profile(mix_seed(seed, 3));
    const auto bids = p.valuations();
    const int m = p.item_count();
    const Allocation a = allocate_declared(p);
    const PriceVector lo = min_walrasian_prices(p), hi = max_walrasian_prices(p);
    const auto vcg = run_mechanism(PaymentRule::Vcg, p);
    const auto eng = run_mechanism(PaymentRule::EnglishWalrasian, p);
    const auto dut = run_mechanism(PaymentRule::DutchWalrasian, p);
    const auto pyb = run_mechanism(PaymentRule::PayYourBid, p);
    CHECK(eng.prices_used == lo);
    CHECK(dut.prices_used == hi);
    CHECK_FALSE(vcg.prices_used);
    for (int i = 0; i < p.agent_count(); ++i) {
      CHECK(vcg.payments[i] == oracle::vcg_payment(bids, a, i));
      CHECK(eng.payments[i] == lo.cost(a[i]));
      CHECK(dut.payments[i] == hi.cost(a[i]));
      CHECK(pyb.payments[i] == oracle::value(bids[i], a[i]));
      CHECK(utility(p.bid(i), pyb, i) == Money());
    }
    for (const auto* o : {&vcg, &eng, &dut, &pyb}) {
      CHECK(o->allocation == a);
      CHECK(o->payments_within_bids(p));
    }
    CHECK(oracle::partition_value(bids, a) == oracle::welfare(bids, oracle::ones(m)));
    CHECK(check_payment_ordering(p).holds());
  }
}

TEST_CASE("payments reject a non-canonical allocation") {
  const BidProfile p = fixtures::overbidding_types();
  CHECK_THROWS_AS(payments(PaymentRule::Vcg, p, {Bundle::full(3), Bundle(), Bundle()}), std::invalid_argument);
  CHECK_THROWS_AS(payments(PaymentRule::Vcg, p, {Bundle::full(3)}), std::invalid_argument);
  const auto r = payments(PaymentRule::EnglishWalrasian, p, allocate_declared(p));
  CHECK(r.payments == std::vector<Money>{2, 1, 0});
}

TEST_CASE("rule names round-trip") {
  for (auto r : kAllRules) CHECK(parse_payment_rule(to_string(r)) == r);
  CHECK_THROWS_AS(parse_payment_rule("gsp"), std::invalid_argument);
}

TEST_CASE("single item: second price and first price") {
  const BidProfile p(1, {Valuation::additive({3}), Valuation::additive({5}), Valuation::additive({2})});
  CHECK(run_mechanism(PaymentRule::Vcg, p).payments == std::vector<Money>{0, 3, 0});
  CHECK(run_mechanism(PaymentRule::EnglishWalrasian, p).payments == std::vector<Money>{0, 3, 0});
  CHECK(run_mechanism(PaymentRule::DutchWalrasian, p).payments == std::vector<Money>{0, 5, 0});
  CHECK(run_mechanism(PaymentRule::PayYourBid, p).payments == std::vector<Money>{0, 5, 0});
}
