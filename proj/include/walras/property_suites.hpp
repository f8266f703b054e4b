#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "walras/instance_io.hpp"

namespace walras {

// Counts for one named property across all seeded draws.
struct PropertyCheck {
  std::string name;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::optional<Json> first_counterexample;

  void record(bool ok, const std::function<Json()>& witness);
};

struct PropertyReport {
  std::string suite;
  int seeds = 0;
  std::uint64_t base_seed = 0;
  std::vector<PropertyCheck> checks;
  Json notes = Json::object();  // report-only observations

  bool passed() const;
  const PropertyCheck& check(std::string_view name) const;
  Json to_json() const;
};

// lemmas | ordering | smoothness | lattice | all
std::vector<std::string> property_suites();

// Seed k of the run draws its instance from mix_seed(base_seed, k), so a
// report depends only on (suite, seeds, base_seed). Throws
// std::invalid_argument for an unknown suite.
PropertyReport run_property_suite(std::string_view suite, int seeds, std::uint64_t base_seed = 0);

// Random profile shapes used by the suites.
struct DrawShape {
  int min_agents = 2, max_agents = 4;
  int min_items = 2, max_items = 4;
  Money cap = Money(4);
  long denominator = 4;
};

// Each agent's class is uniform over additive, unit-demand and OXS.
BidProfile sample_gs_profile(std::uint64_t seed, const DrawShape& shape = {});
// Every agent is an explicit XOS valuation.
BidProfile sample_xos_profile(std::uint64_t seed, const DrawShape& shape = {});
// Profile of the same shape as `like`, GS classes.
BidProfile sample_gs_profile_like(const BidProfile& like, std::uint64_t seed, const DrawShape& shape = {});
// Each item goes to a uniform agent.
Allocation sample_partition(int n, int m, std::uint64_t seed);

}  // namespace walras
