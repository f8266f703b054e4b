#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "walras/instance_io.hpp"
#include "walras/welfare.hpp"

// Parametric builders for the worked instances shipped under fixtures/.
// Item indices are 0-based: "item 1" of a three-item example is index 0.
namespace walras::fixtures {

// Two items; agent 0 unit-demand at 1+eps per item, agent 1 additive at 2.
BidProfile example1_types(const Money& eps);
// Agent 0 truthful, agent 1 bids 2 on item 0 only.
BidProfile example1_demand_reduction(const Money& eps);

// Two items A, B; crossed unit-demand agents. gamma = 0 is the basic case;
// gamma > 0 lowers the off-diagonal value to 2/(2+gamma).
BidProfile example2_types(const Money& eps, const Money& gamma = Money());
// Each agent bids 2(1+gamma)/(2+gamma) on its less-preferred item only.
BidProfile example2_miscoordination(const Money& gamma = Money());

// Three items, three agents; optimal welfare 8.
BidProfile overbidding_types();
// Agent 0 declares 4x_0 + max{2x_1, 3x_2}; the others are truthful.
BidProfile overbidding_deviation();
Valuation overbidding_deviation_bid();

// One item; values 1 and eps; bids 0 and 10.
BidProfile bullying_types(const Money& eps);
BidProfile bullying_bids();

// Two items; agent 0 wants both (worth 2 together, 0 otherwise), agent 1 is
// unit-demand at 3/2 per item. No Walrasian equilibrium exists.
BidProfile and_bidder_types();

// min{6, 3x_A + 5x_B + 3x_C} as a table.
Valuation budget_additive_v3();

struct NamedProfile {
  std::string name;
  BidProfile profile;
};

// The three-agent submodular family used to probe the payment ranking:
// agent 0 values A and B at 100 each, agent 2 is budget-additive, agent 1
// is a small additive bidder worth 1 and 2 on an ordered pair of distinct
// items (all six placements).
std::vector<NamedProfile> ranking_family();

InstanceFile to_instance_file(const std::string& name, const BidProfile& types,
                              const std::optional<BidProfile>& bids = std::nullopt,
                              std::optional<Money> epsilon = std::nullopt,
                              std::optional<std::string> family = std::nullopt);

// WALRAS_FIXTURES if set, otherwise the source tree's fixtures/ directory.
std::filesystem::path fixture_dir();

}  // namespace walras::fixtures
