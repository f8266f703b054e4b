#pragma once

#include <string>
#include <vector>

#include "walras/welfare.hpp"

namespace walras {

// p_j = W(𝟙_j | 𝟙): the welfare an extra copy of item j adds.
PriceVector min_walrasian_prices(const BidProfile& profile);
// p_j = W(𝟙_j | 𝟙 - 𝟙_j): the welfare lost by removing item j.
PriceVector max_walrasian_prices(const BidProfile& profile);

struct DemandFailure {
  int agent;
  Bundle assigned;
  Bundle better;  // a demanded bundle with strictly higher utility
  Money utility_gap;
};

struct WalrasianCertificate {
  bool is_equilibrium = false;
  std::vector<DemandFailure> failures;
};

// Checks x_i ∈ D_{b_i}(p) for every agent. Throws std::invalid_argument if
// alloc is not a full disjoint partition.
WalrasianCertificate verify_walrasian_equilibrium(const BidProfile& profile, const Allocation& alloc,
                                                  const PriceVector& p);

struct TatonnementResult {
  PriceVector prices;
  Allocation allocation;
  int rounds = 0;
  std::vector<PriceVector> history;  // prices at the start of every round
};

// Ascending auction with provisional holdings, from zero prices. An agent
// sees its held items at p_j and every other item at p_j + epsilon. Each
// round the lowest-index agent whose holding is not demanded switches to its
// smallest-bitmask demanded bundle: items taken from others go up by
// epsilon, items it drops become unheld. Stops when every holding is
// demanded; unheld items go to agent 0.
//
// Throws std::runtime_error when the round cap 10·m·(max value / epsilon) is
// hit, which signals non-substitutes bids or an epsilon too coarse for the
// value grid.
TatonnementResult tatonnement(const BidProfile& profile, const Money& epsilon);

}  // namespace walras
