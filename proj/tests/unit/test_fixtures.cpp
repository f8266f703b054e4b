#include <doctest.h>

#include "walras/fixtures.hpp"
#include "walras/property_suites.hpp"
#include "walras/reproduce.hpp"

using namespace walras;

namespace {

InstanceFile shipped(const char* name) { return load_instance(fixtures::fixture_dir() / name); }

}  // namespace

TEST_CASE("shipped fixtures match the builders") {
  const Money eps(1, 8);
  const auto ex1 = shipped("example1_eps_0.125.json");
  CHECK(ex1.epsilon == eps);
  CHECK(ex1.types().valuations() == fixtures::example1_types(eps).valuations());
  CHECK(ex1.declared().valuations() == fixtures::example1_demand_reduction(eps).valuations());

  const auto ex2 = shipped("example2_eps_0.125.json");
  CHECK(ex2.types().valuations() == fixtures::example2_types(eps).valuations());
  CHECK(ex2.declared().valuations() == fixtures::example2_miscoordination().valuations());

  const auto over = shipped("appendix_overbidding.json");
  CHECK(over.types().valuations() == fixtures::overbidding_types().valuations());
  CHECK(over.declared().valuations() == fixtures::overbidding_deviation().valuations());

  const auto bully = shipped("bullying_eps_0.125.json");
  CHECK(bully.types().valuations() == fixtures::bullying_types(eps).valuations());
  CHECK(bully.declared().valuations() == fixtures::bullying_bids().valuations());

  CHECK(shipped("and_bidder.json").types().valuations() == fixtures::and_bidder_types().valuations());
  const auto zero = shipped("zero_bidder.json");
  CHECK(zero.types().bid(0).evaluate(Bundle::full(2)) == Money());
  CHECK_FALSE(zero.has_bids());
}

TEST_CASE("every scenario reproduces at two epsilons") {
  for (const auto& name : reproduction_scenarios())
    for (const Money& eps : {Money(1, 8), Money(1, 16)}) {
      const auto r = reproduce(name, eps);
      INFO(name, " eps=", eps.to_string(), " ", r.to_json().dump());
      CHECK(r.passed());
      CHECK_FALSE(r.facts.empty());
    }
  CHECK_THROWS_AS(reproduce("nope"), std::invalid_argument);
  CHECK_THROWS_AS(reproduce("example1", Money(1, 2)), std::invalid_argument);
}

TEST_CASE("zero bidder never pays") {
  const BidProfile p = shipped("zero_bidder.json").types();
  for (auto rule : kAllRules) CHECK(run_mechanism(rule, p).payments[0] == Money());
}

TEST_CASE("property suites are deterministic") {
  const auto a = run_property_suite("all", 5, 42).to_json();
  const auto b = run_property_suite("all", 5, 42).to_json();
  CHECK(a.dump() == b.dump());
  CHECK(run_property_suite("all", 5, 42).passed());
  CHECK_THROWS_AS(run_property_suite("bogus", 1), std::invalid_argument);
}
