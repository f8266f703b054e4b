#pragma once

// Brute-force reference implementations used to freeze expected values.
// They share no code paths with the library beyond the data types.

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "walras/mechanisms.hpp"
#include "walras/valuation.hpp"
#include "walras/welfare.hpp"

namespace oracle {

using namespace walras;

inline Money sum_over(const WeightVector& w, Bundle s) {
  Money t;
  for (int j = 0; j < static_cast<int>(w.size()); ++j)
    if (s.contains(j)) t += w[j];
  return t;
}

// Best assignment of bundle items to distinct slots, trying every injection.
inline Money oxs_value(const std::vector<WeightVector>& matrix, Bundle s) {
  const auto items = s.items();
  const int slots = matrix.empty() ? 0 : static_cast<int>(matrix[0].size());
  Money best;
  std::vector<int> used(slots, 0);
  std::function<void(std::size_t, Money)> go = [&](std::size_t k, Money acc) {
    if (k == items.size()) {
      best = max(best, acc);
      return;
    }
    go(k + 1, acc);  // item left unmatched
    for (int t = 0; t < slots; ++t) {
      if (used[t]) continue;
      used[t] = 1;
      go(k + 1, acc + matrix[items[k]][t]);
      used[t] = 0;
    }
  };
  go(0, Money());
  return best;
}

inline Money value(const Valuation& v, Bundle s) {
  switch (v.kind()) {
    case ValuationKind::Additive: return sum_over(v.weights(), s);
    case ValuationKind::UnitDemand: {
      Money best;
      for (int j : s.items()) best = max(best, v.weights()[j]);
      return best;
    }
    case ValuationKind::Xos: {
      Money best;
      for (const auto& c : v.clauses()) best = max(best, sum_over(c, s));
      return best;
    }
    case ValuationKind::Oxs: return oxs_value(v.matrix(), s);
    case ValuationKind::Tabular: return v.table_values()[s.bits()];
  }
  return Money();
}

// Maximum welfare when item j has supply[j] copies; every copy goes to one
// agent or to nobody, and an agent values only the distinct items it holds.
inline Money welfare(const std::vector<Valuation>& bids, const std::vector<int>& supply,
                     std::optional<int> excluded = std::nullopt) {
  const int n = static_cast<int>(bids.size());
  std::vector<int> unit_item;
  for (int j = 0; j < static_cast<int>(supply.size()); ++j)
    for (int c = 0; c < supply[j]; ++c) unit_item.push_back(j);
  std::vector<int> owner(unit_item.size(), 0);
  Money best;
  while (true) {
    std::vector<Bundle> held(n);
    for (std::size_t u = 0; u < unit_item.size(); ++u)
      if (owner[u] < n) held[owner[u]] = held[owner[u]].with(unit_item[u]);
    Money total;
    for (int i = 0; i < n; ++i)
      if (!excluded || *excluded != i) total += value(bids[i], held[i]);
    best = max(best, total);
    std::size_t u = 0;
    while (u < owner.size() && ++owner[u] > n) owner[u++] = 0;
    if (u == owner.size()) break;
  }
  return best;
}

inline std::vector<int> ones(int m) { return std::vector<int>(m, 1); }

// All full partitions, each item to one of n agents.
inline std::vector<Allocation> partitions(int n, int m) {
  std::vector<Allocation> out;
  std::vector<int> owner(m, 0);
  while (true) {
    Allocation a(n);
    for (int j = 0; j < m; ++j) a[owner[j]] = a[owner[j]].with(j);
    out.push_back(a);
    int j = 0;
    while (j < m && ++owner[j] == n) owner[j++] = 0;
    if (j == m) break;
  }
  return out;
}

inline Money partition_value(const std::vector<Valuation>& bids, const Allocation& a) {
  Money t;
  for (std::size_t i = 0; i < bids.size(); ++i) t += value(bids[i], a[i]);
  return t;
}

inline std::vector<Bundle> demand(const Valuation& v, const std::vector<Money>& p) {
  const int m = v.item_count();
  Money best;
  bool first = true;
  std::vector<Bundle> out;
  for (std::uint32_t b = 0; b < (1u << m); ++b) {
    Bundle s(b);
    const Money u = value(v, s) - sum_over(p, s);
    if (first || best < u) {
      best = u;
      out.clear();
      first = false;
    }
    if (u == best) out.push_back(s);
  }
  return out;
}

inline bool supports(const std::vector<Valuation>& bids, const Allocation& a, const std::vector<Money>& p) {
  for (std::size_t i = 0; i < bids.size(); ++i) {
    const auto d = demand(bids[i], p);
    if (std::find(d.begin(), d.end(), a[i]) == d.end()) return false;
  }
  return true;
}

// Every price vector on the grid {0, step, ..., top}^m that supports a.
inline std::vector<std::vector<Money>> walrasian_grid(const std::vector<Valuation>& bids, const Allocation& a,
                                                      const Money& step, const Money& top) {
  const int m = bids.front().item_count();
  std::vector<std::vector<Money>> out;
  std::vector<Money> p(m);
  std::function<void(int)> go = [&](int j) {
    if (j == m) {
      if (supports(bids, a, p)) out.push_back(p);
      return;
    }
    for (Money x; x <= top; x += step) {
      p[j] = x;
      go(j + 1);
    }
  };
  go(0);
  return out;
}

// Kelso-Crawford: for p <= q and S demanded at p, some T demanded at q keeps
// every item of S whose price did not change. Checked on a price grid.
inline bool gross_substitutes_on_grid(const Valuation& v, const std::vector<Money>& levels) {
  const int m = v.item_count();
  std::vector<std::vector<Money>> grid(1);
  for (int j = 0; j < m; ++j) {
    std::vector<std::vector<Money>> next;
    for (const auto& g : grid)
      for (const auto& x : levels) {
        auto h = g;
        h.push_back(x);
        next.push_back(std::move(h));
      }
    grid = std::move(next);
  }
  for (const auto& p : grid) {
    const auto dp = demand(v, p);
    for (const auto& q : grid) {
      bool up = true;
      for (int j = 0; j < m; ++j) up = up && p[j] <= q[j];
      if (!up) continue;
      const auto dq = demand(v, q);
      for (Bundle s : dp) {
        Bundle kept;
        for (int j : s.items())
          if (p[j] == q[j]) kept = kept.with(j);
        bool ok = false;
        for (Bundle t : dq) ok = ok || kept.subset_of(t);
        if (!ok) return false;
      }
    }
  }
  return true;
}

inline Money vcg_payment(const std::vector<Valuation>& bids, const Allocation& a, int i) {
  const int m = bids.front().item_count();
  std::vector<int> rest(m, 1);
  for (int j : a[i].items()) rest[j] = 0;
  return welfare(bids, ones(m), i) - welfare(bids, rest, i);
}

}  // namespace oracle
