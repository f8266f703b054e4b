#include <doctest.h>

#include "oracles.hpp"
#include "walras/fixtures.hpp"
#include "walras/rng.hpp"

using namespace walras;

namespace {

constexpr ValuationClass kClasses[4] = {ValuationClass::Additive, ValuationClass::UnitDemand, ValuationClass::Oxs,
                                        ValuationClass::Xos};

bool submodular_brute(const Valuation& v) {
  const std::uint32_t top = 1u << v.item_count();
  for (std::uint32_t a = 0; a < top; ++a)
    for (std::uint32_t b = 0; b < top; ++b)
      if (oracle::value(v, Bundle(a)) + oracle::value(v, Bundle(b)) <
          oracle::value(v, Bundle(a | b)) + oracle::value(v, Bundle(a & b)))
        return false;
  return true;
}

}  // namespace

TEST_CASE("bundles") {
  const Bundle b = Bundle::of({0, 2});
  CHECK(b.bits() == 5u);
  CHECK(b.size() == 2);
  CHECK(b.to_string() == "{0,2}");
  CHECK(Bundle::single(1).subset_of(Bundle::full(3)));
  CHECK((Bundle::full(3) - b) == Bundle::single(1));
  CHECK_THROWS_AS(check_item_count(kMaxItems + 1), std::invalid_argument);
  const auto x = ItemMultiset::ones(3).plus_item(1);
  CHECK(x.max_multiplicity() == 2);
  CHECK(x.doubled() == Bundle::single(1));
  CHECK_THROWS(ItemMultiset::zero(3).minus_item(0));
}

TEST_CASE("valuation values match the definitions") {
  CHECK(Valuation::additive({1, 2, 3}).evaluate(Bundle::of({0, 2})) == Money(4));
  CHECK(Valuation::unit_demand({1, 2, 3}).evaluate(Bundle::of({0, 1})) == Money(2));
  CHECK(Valuation::xos({{4, 2, 0}, {4, 0, 2}}).evaluate(Bundle::full(3)) == Money(6));
  // two items competing for the one slot both prefer
  const auto oxs = Valuation::oxs({{5, 1}, {4, 0}, {3, 3}});
  CHECK(oxs.evaluate(Bundle::of({0, 1})) == Money(5));
  CHECK(oxs.evaluate(Bundle::full(3)) == Money(8));
  for (int m = 1; m <= 5; ++m)
    for (auto cls : kClasses)
      for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Valuation v = sample_valuation(cls, m, Money(3), mix_seed(seed, m));
        CHECK(v.item_count() == m);
        const ValueTable t = v.tabulate();
        for (std::uint32_t b = 0; b < (1u << m); ++b) {
          CHECK(v.evaluate(Bundle(b)) == oracle::value(v, Bundle(b)));
          CHECK(t[Bundle(b)] == oracle::value(v, Bundle(b)));
        }
        CHECK(is_monotone_normalized(t));
      }
}

TEST_CASE("multiset evaluation clamps to the support") {
  const auto v = Valuation::additive({1, 2});
  CHECK(v.evaluate(ItemMultiset::ones(2).plus_item(0)) == Money(3));
  CHECK(marginal_value(v, ItemMultiset::from_bundle(Bundle::single(0), 2), ItemMultiset::ones(2)) == Money());
  CHECK(marginal_value(v, ItemMultiset::from_bundle(Bundle::single(1), 2), ItemMultiset::from_bundle(Bundle::single(0), 2)) ==
        Money(2));
}

TEST_CASE("tabular valuations must be normalized and monotone") {
  CHECK_THROWS_AS(Valuation::tabular(1, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Valuation::tabular(2, {0, 2, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Valuation::tabular(2, {0, 1, 1}), std::invalid_argument);
  CHECK_NOTHROW(Valuation::tabular(2, {0, 0, 0, 2}));
  CHECK_THROWS_AS(Valuation::additive({1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(Valuation::xos({}), std::invalid_argument);
}

TEST_CASE("demand sets match exhaustive search") {
  Rng rng(7);
  for (int m = 1; m <= 4; ++m)
    for (auto cls : kClasses)
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Valuation v = sample_valuation(cls, m, Money(3), mix_seed(seed, 40 + m));
        std::vector<Money> p;
        for (int j = 0; j < m; ++j) p.push_back(Money(rng.uniform(0, 12), 4));
        CHECK(demand_set(v, PriceVector(p)) == oracle::demand(v, p));
        CHECK(demand_set(v.tabulate(), PriceVector(p)) == oracle::demand(v, p));
      }
}

TEST_CASE("class membership checks agree with definitions") {
  const std::vector<Money> levels = {Money(0), Money(1, 2), Money(1), Money(2), Money(3)};
  for (auto cls : kClasses)
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const Valuation v = sample_valuation(cls, 3, Money(3), mix_seed(seed, 99), {2, 3, 0});
      const ValueTable t = v.tabulate();
      CHECK(is_submodular(t) == submodular_brute(v));
      const bool gs = is_gross_substitutes(t);
      if (cls != ValuationClass::Xos) {
        CHECK(gs);
        CHECK(is_submodular(t));
      }
      if (!oracle::gross_substitutes_on_grid(v, levels)) CHECK_FALSE(gs);
      if (gs) CHECK(oracle::gross_substitutes_on_grid(v, levels));
    }
}

TEST_CASE("budget-additive valuation is submodular but not gross substitutes") {
  const Valuation v3 = fixtures::budget_additive_v3();
  CHECK(submodular_brute(v3));
  CHECK(is_submodular(v3.tabulate()));
  CHECK_FALSE(is_gross_substitutes(v3.tabulate()));
  CHECK_FALSE(oracle::gross_substitutes_on_grid(v3, {Money(0), Money(1), Money(2), Money(3), Money(4), Money(5)}));
}

TEST_CASE("complements fail both checks") {
  const ValueTable t = Valuation::tabular(2, {0, 0, 0, 2}).tabulate();
  CHECK_FALSE(is_submodular(t));
  CHECK_FALSE(is_gross_substitutes(t));
}

TEST_CASE("supporting clause and scaling") {
  const auto v = Valuation::xos({{4, 2, 0}, {4, 0, 2}});
  CHECK(xos_supporting_clause(v, Bundle::of({0, 2})) == WeightVector{4, 0, 2});
  CHECK(xos_supporting_clause(v, Bundle::single(0)) == WeightVector{4, 2, 0});
  CHECK(v.scaled(Money(1, 2)).evaluate(Bundle::full(3)) == Money(3));
}

TEST_CASE("sampling is deterministic and respects the cap") {
  for (auto cls : kClasses) {
    CHECK(sample_valuation(cls, 4, Money(2), 11) == sample_valuation(cls, 4, Money(2), 11));
    const auto t = sample_valuation(cls, 4, Money(2), 12).tabulate();
    for (int j = 0; j < 4; ++j) CHECK(t[Bundle::single(j)] <= Money(2));
  }
  CHECK(parse_valuation_class("oxs") == ValuationClass::Oxs);
  CHECK_THROWS(parse_valuation_class("sm"));
}
