#include "walras/fixtures.hpp"

#include <cstdlib>

#ifndef WALRAS_DEFAULT_FIXTURES
#define WALRAS_DEFAULT_FIXTURES "fixtures"
#endif

namespace walras::fixtures {

BidProfile example1_types(const Money& eps) {
  const Money top = Money(1) + eps;
  return BidProfile(2, {Valuation::unit_demand({top, top}), Valuation::additive({2, 2})});
}

BidProfile example1_demand_reduction(const Money& eps) {
  const Money top = Money(1) + eps;
  return BidProfile(2, {Valuation::unit_demand({top, top}), Valuation::additive({2, 0})});
}

BidProfile example2_types(const Money& eps, const Money& gamma) {
  const Money hi = Money(2) - eps;
  const Money lo = Money(2) / (Money(2) + gamma);
  return BidProfile(2, {Valuation::unit_demand({hi, lo}), Valuation::unit_demand({lo, hi})});
}

BidProfile example2_miscoordination(const Money& gamma) {
  const Money b = Money(2) * (Money(1) + gamma) / (Money(2) + gamma);
  return BidProfile(2, {Valuation::additive({0, b}), Valuation::additive({b, 0})});
}

BidProfile overbidding_types() {
  return BidProfile(3, {Valuation::xos({{4, 2, 0}, {4, 0, 2}}), Valuation::unit_demand({2, 2, 0}),
                        Valuation::additive({0, 0, 1})});
}

Valuation overbidding_deviation_bid() { return Valuation::xos({{4, 2, 0}, {4, 0, 3}}); }

BidProfile overbidding_deviation() { return overbidding_types().with_bid(0, overbidding_deviation_bid()); }

BidProfile bullying_types(const Money& eps) {
  return BidProfile(1, {Valuation::additive({1}), Valuation::additive({eps})});
}

BidProfile bullying_bids() { return BidProfile(1, {Valuation::additive({0}), Valuation::additive({10})}); }

BidProfile and_bidder_types() {
  return BidProfile(2, {Valuation::tabular(2, {0, 0, 0, 2}), Valuation::unit_demand({Money(3, 2), Money(3, 2)})});
}

Valuation budget_additive_v3() {
  const Money w[3] = {3, 5, 3};
  std::vector<Money> values(8);
  for (std::uint32_t b = 0; b < 8; ++b) {
    Money s;
    for (int j = 0; j < 3; ++j)
      if (b & (1u << j)) s += w[j];
    values[b] = min(s, Money(6));
  }
  return Valuation::tabular(3, std::move(values));
}

std::vector<NamedProfile> ranking_family() {
  static const char* kNames[3] = {"A", "B", "C"};
  std::vector<NamedProfile> out;
  for (int first = 0; first < 3; ++first) {
    for (int second = 0; second < 3; ++second) {
      if (first == second) continue;
      WeightVector w(3);
      w[first] = 1;
      w[second] = 2;
      BidProfile p(3, {Valuation::additive({100, 100, 0}), Valuation::additive(w), budget_additive_v3()});
      out.push_back({std::string("v2=x_") + kNames[first] + "+2x_" + kNames[second], std::move(p)});
    }
  }
  return out;
}

InstanceFile to_instance_file(const std::string& name, const BidProfile& types, const std::optional<BidProfile>& bids,
                              std::optional<Money> epsilon, std::optional<std::string> family) {
  InstanceFile f;
  f.name = name;
  f.m = types.item_count();
  f.valuations = types.valuations();
  for (int i = 0; i < types.agent_count(); ++i) {
    if (bids && !(bids->bid(i) == types.bid(i)))
      f.bids.emplace_back(bids->bid(i));
    else
      f.bids.emplace_back(std::nullopt);
  }
  f.epsilon = std::move(epsilon);
  f.family = std::move(family);
  return f;
}

std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("WALRAS_FIXTURES"); env && *env) return env;
  return WALRAS_DEFAULT_FIXTURES;
}

}  // namespace walras::fixtures
