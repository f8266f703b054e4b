#include "walras/welfare.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>

namespace walras {

BidProfile::BidProfile(int m, std::vector<Valuation> bids) : m_(m) {
  check_item_count(m);
  bids_.reserve(bids.size());
  for (auto& v : bids) bids_.push_back(tabulated(std::move(v)));
  if (bids_.empty()) throw std::invalid_argument("BidProfile: at least one agent required");
  for (const auto& b : bids_)
    if (b->valuation.item_count() != m) throw std::invalid_argument("BidProfile: valuation item count mismatch");
}

BidProfile::BidProfile(int m, std::vector<TabulatedPtr> bids) : m_(m), bids_(std::move(bids)) {
  check_item_count(m);
  if (bids_.empty()) throw std::invalid_argument("BidProfile: at least one agent required");
  for (const auto& b : bids_) {
    if (!b) throw std::invalid_argument("BidProfile: null bid");
    if (b->valuation.item_count() != m) throw std::invalid_argument("BidProfile: valuation item count mismatch");
  }
}

std::vector<Valuation> BidProfile::valuations() const {
  std::vector<Valuation> out;
  out.reserve(bids_.size());
  for (const auto& b : bids_) out.push_back(b->valuation);
  return out;
}

BidProfile BidProfile::with_bid(int i, Valuation v) const { return with_bid(i, tabulated(std::move(v))); }

BidProfile BidProfile::with_bid(int i, TabulatedPtr v) const {
  std::vector<TabulatedPtr> bids = bids_;
  bids.at(i) = std::move(v);
  return BidProfile(m_, std::move(bids));
}

void validate_partition(const Allocation& alloc, int n, int m) {
  if (static_cast<int>(alloc.size()) != n)
    throw std::invalid_argument("allocation has " + std::to_string(alloc.size()) + " bundles for " +
                                std::to_string(n) + " agents");
  Bundle seen;
  for (const auto& b : alloc) {
    if (!b.fits(m)) throw std::invalid_argument("allocation bundle " + b.to_string() + " exceeds item count");
    if (!(b & seen).is_empty()) throw std::invalid_argument("allocation bundles overlap");
    seen = seen | b;
  }
  if (seen != Bundle::full(m)) throw std::invalid_argument("allocation does not cover every item");
}

namespace {

// Supply state: `one` = items with >= 1 copy left, `two` = items with 2 left.
struct Supply {
  std::uint32_t one = 0;
  std::uint32_t two = 0;

  std::uint32_t key() const { return one | (two << 16); }
  Supply take(std::uint32_t x) const { return Supply{(one & ~x) | (two & x), two & ~x}; }
};

Supply to_supply(const ItemMultiset& s, int m) {
  if (s.item_count() != m) throw std::invalid_argument("supply length does not match item count");
  if (s.max_multiplicity() > 2) throw std::invalid_argument("supply multiplicities above 2 are not supported");
  return Supply{s.support().bits(), s.doubled().bits()};
}

// Ascending enumeration of the submasks of `mask`, starting after `x`.
inline std::uint32_t next_submask(std::uint32_t x, std::uint32_t mask) { return ((x | ~mask) + 1) & mask; }

class WelfareDp {
 public:
  WelfareDp(const BidProfile& profile, std::optional<int> excluded) : profile_(profile) {
    for (int i = 0; i < profile.agent_count(); ++i)
      if (!excluded || *excluded != i) agents_.push_back(i);
    memo_.resize(agents_.size());
  }

  const std::vector<int>& agents() const { return agents_; }

  const Money& best(std::size_t level, Supply s) {
    static const Money kZero;
    if (level == agents_.size() || s.one == 0) return kZero;
    auto& memo = memo_[level];
    if (auto it = memo.find(s.key()); it != memo.end()) return it->second;
    const ValueTable& t = profile_.table(agents_[level]);
    Money top;
    bool first = true;
    std::uint32_t x = 0;
    do {
      Money cand = t.values[x] + best(level + 1, s.take(x));
      if (first || top < cand) {
        top = std::move(cand);
        first = false;
      }
      x = next_submask(x, s.one);
    } while (x != 0);
    return memo.emplace(s.key(), std::move(top)).first->second;
  }

  std::vector<Bundle> argmax(Supply s) {
    std::vector<Bundle> out(profile_.agent_count());
    for (std::size_t level = 0; level < agents_.size(); ++level) {
      const Money target = best(level, s);
      const ValueTable& t = profile_.table(agents_[level]);
      std::uint32_t x = 0;
      bool found = false;
      do {
        if (t.values[x] + best(level + 1, s.take(x)) == target) {
          found = true;
          break;
        }
        x = next_submask(x, s.one);
      } while (x != 0);
      if (!found) throw std::logic_error("welfare argmax reconstruction failed");
      out[agents_[level]] = Bundle(x);
      s = s.take(x);
    }
    return out;
  }

 private:
  const BidProfile& profile_;
  std::vector<int> agents_;
  std::vector<std::unordered_map<std::uint32_t, Money>> memo_;
};

}  // namespace

WelfareSolution welfare_max(const BidProfile& profile, const ItemMultiset& supply) {
  Supply s = to_supply(supply, profile.item_count());
  WelfareDp dp(profile, std::nullopt);
  WelfareSolution out;
  out.value = dp.best(0, s);
  out.bundles = dp.argmax(s);
  return out;
}

Money welfare_value(const BidProfile& profile, const ItemMultiset& supply, std::optional<int> excluded) {
  if (excluded && (*excluded < 0 || *excluded >= profile.agent_count()))
    throw std::out_of_range("agent index " + std::to_string(*excluded) + " out of range");
  Supply s = to_supply(supply, profile.item_count());
  WelfareDp dp(profile, excluded);
  return dp.best(0, s);
}

Money welfare_excluding(const BidProfile& profile, int i, const ItemMultiset& supply) {
  return welfare_value(profile, supply, i);
}

Money welfare_marginal(const BidProfile& profile, const ItemMultiset& add, const ItemMultiset& base) {
  return welfare_value(profile, add.plus(base)) - welfare_value(profile, base);
}

Money welfare_marginal_excluding(const BidProfile& profile, int i, const ItemMultiset& add,
                                 const ItemMultiset& base) {
  return welfare_value(profile, add.plus(base), i) - welfare_value(profile, base, i);
}

Allocation optimal_allocation(const BidProfile& profile) {
  const int m = profile.item_count();
  auto sol = welfare_max(profile, ItemMultiset::ones(m));
  Bundle used;
  for (const auto& b : sol.bundles) used = used | b;
  sol.bundles[0] = sol.bundles[0] | (Bundle::full(m) - used);
  return sol.bundles;
}

Money allocation_value(const BidProfile& profile, const Allocation& alloc) {
  if (static_cast<int>(alloc.size()) != profile.agent_count())
    throw std::invalid_argument("allocation size does not match agent count");
  Money total;
  for (int i = 0; i < profile.agent_count(); ++i) total += profile.table(i)[alloc[i]];
  return total;
}

}  // namespace walras
