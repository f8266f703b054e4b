#include "walras/walrasian.hpp"

#include <algorithm>
#include <stdexcept>

namespace walras {

PriceVector min_walrasian_prices(const BidProfile& profile) {
  const int m = profile.item_count();
  const auto ones = ItemMultiset::ones(m);
  const Money base = welfare_value(profile, ones);
  std::vector<Money> p(m);
  for (int j = 0; j < m; ++j) p[j] = welfare_value(profile, ones.plus_item(j)) - base;
  return PriceVector(std::move(p));
}

PriceVector max_walrasian_prices(const BidProfile& profile) {
  const int m = profile.item_count();
  const auto ones = ItemMultiset::ones(m);
  const Money base = welfare_value(profile, ones);
  std::vector<Money> p(m);
  for (int j = 0; j < m; ++j) p[j] = base - welfare_value(profile, ones.minus_item(j));
  return PriceVector(std::move(p));
}

WalrasianCertificate verify_walrasian_equilibrium(const BidProfile& profile, const Allocation& alloc,
                                                  const PriceVector& p) {
  validate_partition(alloc, profile.agent_count(), profile.item_count());
  if (p.item_count() != profile.item_count()) throw std::invalid_argument("price vector length mismatch");
  WalrasianCertificate cert;
  for (int i = 0; i < profile.agent_count(); ++i) {
    const ValueTable& t = profile.table(i);
    const Money assigned_utility = t[alloc[i]] - p.cost(alloc[i]);
    const auto demanded = demand_set(t, p);
    const Bundle top = demanded.front();
    const Money top_utility = t[top] - p.cost(top);
    if (assigned_utility < top_utility) cert.failures.push_back({i, alloc[i], top, top_utility - assigned_utility});
  }
  cert.is_equilibrium = cert.failures.empty();
  return cert;
}

TatonnementResult tatonnement(const BidProfile& profile, const Money& epsilon) {
  if (!epsilon.is_positive()) throw std::invalid_argument("tatonnement: epsilon must be positive");
  const int m = profile.item_count();
  const int n = profile.agent_count();

  Money max_value;
  for (int i = 0; i < n; ++i) max_value = max(max_value, profile.table(i)[Bundle::full(m)]);
  const Money cap_money = Money(10L * std::max(m, 1)) * max(max_value, epsilon) / epsilon;
  const long cap = mpz_class(cap_money.numerator() / cap_money.denominator()).get_si() + 1;

  TatonnementResult out;
  PriceVector p = PriceVector::zero(m);
  std::vector<Bundle> held(n);
  for (long round = 0; round <= cap; ++round) {
    out.history.push_back(p);
    int mover = -1;
    Bundle wanted;
    for (int i = 0; i < n && mover < 0; ++i) {
      PriceVector seen = p;
      for (int j = 0; j < m; ++j)
        if (!held[i].contains(j)) seen.set(j, p[j] + epsilon);
      const auto d = demand_set(profile.table(i), seen);
      if (std::find(d.begin(), d.end(), held[i]) == d.end()) {
        mover = i;
        wanted = d.front();
      }
    }
    if (mover < 0) {
      Bundle used;
      for (const auto& b : held) used = used | b;
      held[0] = held[0] | (Bundle::full(m) - used);
      out.prices = p;
      out.allocation = std::move(held);
      out.rounds = static_cast<int>(round);
      return out;
    }
    for (int j : (wanted - held[mover]).items()) {
      p.set(j, p[j] + epsilon);
      for (int k = 0; k < n; ++k) held[k] = held[k].without(j);
    }
    held[mover] = wanted;
  }
  throw std::runtime_error("tatonnement: iteration cap exceeded");
}

}  // namespace walras
