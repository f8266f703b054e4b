#include <doctest.h>

#include "oracles.hpp"
#include "walras/rng.hpp"
#include "walras/analysis.hpp"
#include "walras/fixtures.hpp"
#include "walras/property_suites.hpp"

using namespace walras;

namespace {

ExtendedMoney exposure_brute(const Valuation& v, const Valuation& b) {
  Money worst;
  for (std::uint32_t s = 0; s < (1u << v.item_count()); ++s) {
    const Money vs = oracle::value(v, Bundle(s)), bs = oracle::value(b, Bundle(s));
    if (vs.is_zero()) {
      if (bs.is_positive()) return ExtendedMoney::infinity();
      continue;
    }
    worst = max(worst, bs / vs - Money(1));
  }
  return worst;
}

// Grid-Nash by direct enumeration of every candidate deviation.
bool nash_brute(const BidProfile& types, PaymentRule rule, const BidProfile& bids, const BidGrid& grid) {
  const auto base = run_mechanism(rule, bids);
  for (int i = 0; i < types.agent_count(); ++i) {
    const Money u = utility(types.bid(i), base, i);
    std::vector<Valuation> cands;
    for (const auto& c : grid.candidates[i]) cands.push_back(c->valuation);
    cands.push_back(types.bid(i));
    cands.push_back(types.bid(i).scaled(Money(1, 2)));
    for (const auto& c : cands)
      if (u < utility(types.bid(i), run_mechanism(rule, bids.with_bid(i, c)), i)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("additive grid enumeration order") {
  const BidGrid g = additive_grid(2, 2, Money(1, 2), Money(1));
  REQUIRE(g.agent_count() == 2);
  REQUIRE(g.size(0) == 9);
  CHECK(g.candidates[0][1]->valuation == Valuation::additive({Money(1, 2), 0}));
  CHECK(g.candidates[0][3]->valuation == Valuation::additive({0, Money(1, 2)}));
  CHECK_THROWS_AS(additive_grid(2, 16, Money(1, 8), Money(4)), std::length_error);
}

TEST_CASE("default grid") {
  const BidProfile p = fixtures::example1_types(Money(1, 8));
  CHECK(default_grid_delta(p) == Money(1, 8));
  CHECK(default_grid_cap(p) == Money(2));
  const BidProfile q(2, {Valuation::additive({Money(3, 2), 3})});
  CHECK(default_grid_delta(q) == Money(3, 2));
  CHECK(default_grid_cap(q) == Money(3));
  const BidProfile z(2, {Valuation::zero(2)});
  CHECK(default_grid_delta(z) == Money(1, 8));
  CHECK(default_grid_cap(z) == Money(1, 8));
}

TEST_CASE("exposure bound matches the definition") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const BidProfile t = sample_gs_profile(seed);
    const BidProfile b = sample_gs_profile_like(t, seed + 1000);
    for (int i = 0; i < t.agent_count(); ++i)
      CHECK(exposure_factor_bound(t.bid(i), b.bid(i)) == exposure_brute(t.bid(i), b.bid(i)));
  }
  CHECK(exposure_factor_bound(Valuation::additive({1}), Valuation::additive({3})) == ExtendedMoney(Money(2)));
  CHECK(exposure_factor_bound(Valuation::additive({0}), Valuation::additive({1})).is_infinite());
  CHECK(welfare_ratio(Money(), Money()) == ExtendedMoney(Money(1)));
  CHECK(welfare_ratio(Money(1), Money()).is_infinite());
  CHECK(welfare_ratio(Money(3), Money(2)) == ExtendedMoney(Money(3, 2)));
}

TEST_CASE("grid-Nash verdicts match direct enumeration") {
  DrawShape shape;
  shape.max_agents = 2;
  shape.max_items = 2;
  shape.cap = Money(1);
  shape.denominator = 2;
  const BidGrid grid = additive_grid(2, 2, Money(1, 2), Money(1));
  int nash_seen = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const BidProfile types = sample_gs_profile(mix_seed(seed, 8), shape);
    if (types.agent_count() != 2 || types.item_count() != 2) continue;
    for (std::size_t k = 0; k < 4; ++k) {
      const BidProfile bids(2, {grid.candidates[0][(seed * 7 + k * 3) % 9], grid.candidates[1][(seed + k * 5) % 9]});
      for (auto rule : kAllRules) {
        const auto r = verify_nash(types, rule, bids, grid);
        CHECK(r.is_nash == nash_brute(types, rule, bids, grid));
        nash_seen += r.is_nash;
        for (int i = 0; i < 2; ++i) CHECK(r.best_deviation[i].gain == r.best_deviation[i].utility - r.utilities[i]);
      }
    }
  }
  CHECK(nash_seen > 0);
}

TEST_CASE("tolerance relaxes grid-Nash") {
  const Money eps(1, 8);
  const BidProfile types = fixtures::example1_types(eps);
  const BidGrid grid = additive_grid(2, 2, Money(1, 8), Money(4));
  CHECK_FALSE(verify_nash(types, PaymentRule::EnglishWalrasian, types, grid).is_nash);
  CHECK(verify_nash(types, PaymentRule::EnglishWalrasian, types, grid, Money(1, 4)).is_nash);
}

TEST_CASE("efficient profile") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BidProfile types = sample_gs_profile(mix_seed(seed, 21));
    const BidProfile bids = construct_efficient_profile(types);
    const auto out = run_mechanism(PaymentRule::EnglishWalrasian, bids);
    CHECK(allocation_value(types, out.allocation) == welfare_value(types, ItemMultiset::ones(types.item_count())));
    for (int i = 0; i < types.agent_count(); ++i) {
      CHECK(out.payments[i] == Money());
      CHECK(exposure_factor_bound(types.bid(i), bids.bid(i)) == ExtendedMoney(Money()));
    }
  }
  CHECK_THROWS_AS(construct_efficient_profile(fixtures::and_bidder_types()), std::invalid_argument);
}

TEST_CASE("marginal sums match exhaustive welfare") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BidProfile p = seed % 2 ? sample_gs_profile(seed) : sample_xos_profile(seed);
    const auto bids = p.valuations();
    const int n = p.agent_count(), m = p.item_count();
    const Allocation part = sample_partition(n, m, seed);
    Money sum;
    for (int i = 0; i < n; ++i) sum += oracle::vcg_payment(bids, part, i);
    const auto r = marginal_sum_bound(p, part);
    CHECK(r.sum == sum);
    CHECK(r.welfare == oracle::welfare(bids, oracle::ones(m)));
    CHECK(r.all_xos);
    CHECK(r.factor2_holds);
    if (seed % 2) CHECK(r.factor1_holds);
  }
  CHECK_THROWS_AS(marginal_sum_bound(fixtures::overbidding_types(), {Bundle::full(3)}), std::invalid_argument);
}

TEST_CASE("half-clause deviation") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Valuation v = sample_valuation(ValuationClass::Xos, 3, Money(4), seed);
    for (std::uint32_t t = 0; t < 8; ++t) {
      const Valuation h = half_clause_deviation(v, Bundle(t));
      CHECK(h.kind() == ValuationKind::Additive);
      for (std::uint32_t s = 0; s < 8; ++s) CHECK(h.evaluate(Bundle(s)) * Money(2) <= v.evaluate(Bundle(s)));
      CHECK(h.evaluate(Bundle(t)) * Money(2) == v.evaluate(Bundle(t)));
    }
  }
}

TEST_CASE("smoothness and vcg certificates on the examples") {
  const Money eps(1, 8);
  const auto s = smoothness_certificate(fixtures::example2_types(eps), fixtures::example2_miscoordination(),
                                        PaymentRule::EnglishWalrasian);
  CHECK(s.holds);
  CHECK(s.half_optimum == Money(15, 8));
  CHECK(s.declared_welfare == Money(2));
  CHECK(s.slack == s.deviation_utility_sum - (s.half_optimum - s.declared_welfare));
  CHECK(s.payments_within_bids);
  const auto v = vcg_deviation_certificate(fixtures::example1_types(eps), fixtures::example1_types(eps));
  CHECK(v.aggregate_holds);
  CHECK(v.optimum == Money(4));
}

TEST_CASE("price-of-anarchy search agrees with per-profile checks") {
  const BidProfile types(1, {Valuation::additive({2}), Valuation::additive({1})});
  const BidGrid grid = additive_grid(2, 1, Money(1, 2), Money(2));
  for (auto rule : kAllRules) {
    ExtendedMoney worst = Money(1);
    std::uint64_t count = 0;
    for (const auto& a : grid.candidates[0])
      for (const auto& b : grid.candidates[1]) {
        const BidProfile bids(1, {a, b});
        if (exposure_factor_bound(types.bid(0), a->valuation) != ExtendedMoney(Money())) continue;
        if (exposure_factor_bound(types.bid(1), b->valuation) != ExtendedMoney(Money())) continue;
        const auto r = verify_nash(types, rule, bids, grid);
        if (!r.is_nash) continue;
        ++count;
        worst = std::max(worst, r.ratio);
      }
    const auto rep = poa_search(types, rule, grid, Money());
    CHECK(rep.equilibria == count);
    CHECK(rep.worst_ratio == worst);
    PoaOptions par;
    par.jobs = 3;
    const auto rep3 = poa_search(types, rule, grid, Money(), par);
    CHECK(rep3.worst_ratio == rep.worst_ratio);
    CHECK(rep3.equilibria == rep.equilibria);
    CHECK((rep3.witness.has_value() == rep.witness.has_value()));
  }
  PoaOptions tiny;
  tiny.budget = 10;
  CHECK_THROWS_AS(poa_search(types, PaymentRule::Vcg, grid, Money(), tiny), std::length_error);
}

TEST_CASE("best-response dynamics") {
  const BidProfile single(1, {Valuation::additive({2})});
  const BidGrid g1 = additive_grid(1, 1, Money(1, 2), Money(2));
  const auto d = best_response_dynamics(single, PaymentRule::PayYourBid, g1, single, 5);
  CHECK(d.status == DynamicsStatus::Converged);
  CHECK(d.profiles.size() == 2);
  CHECK(d.profiles.back().bid(0) == Valuation::additive({0}));

  const Money eps(1, 8);
  const BidProfile types = fixtures::example1_types(eps);
  const BidGrid grid = additive_grid(2, 2, eps, Money(4));
  const BidProfile eff = construct_efficient_profile(types);
  const auto fix = best_response_dynamics(types, PaymentRule::EnglishWalrasian, grid, eff, 5);
  CHECK(fix.status == DynamicsStatus::Converged);
  CHECK(fix.profiles.size() == 1);
}
