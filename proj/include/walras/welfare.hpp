#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "walras/bundle.hpp"
#include "walras/money.hpp"
#include "walras/valuation.hpp"

namespace walras {

// A valuation together with its full table, shared between profiles.
struct TabulatedValuation {
  explicit TabulatedValuation(Valuation v) : valuation(std::move(v)), table(valuation.tabulate()) {}
  Valuation valuation;
  ValueTable table;
};

using TabulatedPtr = std::shared_ptr<const TabulatedValuation>;

inline TabulatedPtr tabulated(Valuation v) { return std::make_shared<const TabulatedValuation>(std::move(v)); }

// n valuations over the same m items. Used both for declared bids and for
// true types.
class BidProfile {
 public:
  BidProfile(int m, std::vector<Valuation> bids);
  BidProfile(int m, std::vector<TabulatedPtr> bids);

  int item_count() const { return m_; }
  int agent_count() const { return static_cast<int>(bids_.size()); }

  const Valuation& bid(int i) const { return bids_.at(i)->valuation; }
  const ValueTable& table(int i) const { return bids_.at(i)->table; }
  const TabulatedPtr& shared(int i) const { return bids_.at(i); }
  std::vector<Valuation> valuations() const;

  // Copy with agent i's bid replaced.
  BidProfile with_bid(int i, Valuation v) const;
  BidProfile with_bid(int i, TabulatedPtr v) const;

 private:
  int m_;
  std::vector<TabulatedPtr> bids_;
};

// Per-agent bundles, pairwise disjoint, covering all items.
using Allocation = std::vector<Bundle>;

// Throws std::invalid_argument unless alloc is a full disjoint partition of
// the m items among n agents.
void validate_partition(const Allocation& alloc, int n, int m);

struct WelfareSolution {
  Money value;
  std::vector<Bundle> bundles;  // one per agent; sum <= supply
};

// W^b(supply): the best split of the supply among the agents, each taking at
// most one copy of every item. Supply multiplicities must be <= 2.
//
// Agents are processed in index order and each takes the smallest-bitmask
// bundle among equal-value choices, so the argmax is canonical.
WelfareSolution welfare_max(const BidProfile& profile, const ItemMultiset& supply);

// Value only; optionally skipping one agent.
Money welfare_value(const BidProfile& profile, const ItemMultiset& supply, std::optional<int> excluded = {});

// W^{b_-i}(supply).
Money welfare_excluding(const BidProfile& profile, int i, const ItemMultiset& supply);

// W(add + base) - W(base).
Money welfare_marginal(const BidProfile& profile, const ItemMultiset& add, const ItemMultiset& base);

// W^{b_-i}(add + base) - W^{b_-i}(base).
Money welfare_marginal_excluding(const BidProfile& profile, int i, const ItemMultiset& add,
                                 const ItemMultiset& base);

// The canonical argmax of W(𝟙) completed to a full partition: items no agent
// takes go to agent 0.
Allocation optimal_allocation(const BidProfile& profile);

// Σ_i bid_i(alloc_i).
Money allocation_value(const BidProfile& profile, const Allocation& alloc);

}  // namespace walras
