#include "walras/analysis.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <thread>

namespace walras {

namespace {

const Money& half() {
  static const Money h(1, 2);
  return h;
}

long floor_div(const Money& a, const Money& b) {
  Money q = a / b;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.numerator().get_mpz_t(), q.denominator().get_mpz_t());
  return f.get_si();
}

Money true_welfare(const BidProfile& types, const Allocation& alloc) { return allocation_value(types, alloc); }

// Runs fn(k) for k in [0, count) over `jobs` threads. Each k must write only
// to its own slot so results do not depend on scheduling.
template <class Fn>
void parallel_for(std::uint64_t count, int jobs, Fn&& fn) {
  if (jobs <= 1 || count < 2) {
    for (std::uint64_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (std::uint64_t k = t; k < count; k += jobs) fn(k);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

TabulatedPtr half_truthful(const BidProfile& types, int i) { return tabulated(types.bid(i).scaled(half())); }

}  // namespace

BidGrid additive_grid(int n, int m, const Money& delta, const Money& cap) {
  if (!delta.is_positive()) throw std::invalid_argument("grid delta must be positive");
  if (cap.is_negative()) throw std::invalid_argument("grid cap must be non-negative");
  if (n < 1) throw std::invalid_argument("grid needs at least one agent");
  check_item_count(m);
  const long steps = floor_div(cap, delta) + 1;
  double total = 1;
  for (int j = 0; j < m; ++j) total *= static_cast<double>(steps);
  if (total > 2e6) throw std::length_error("additive grid too large: " + std::to_string(total) + " bids");

  std::vector<TabulatedPtr> bids;
  std::vector<long> digits(m, 0);
  for (;;) {
    WeightVector w(m);
    for (int j = 0; j < m; ++j) w[j] = delta * Money(digits[j]);
    bids.push_back(tabulated(Valuation::additive(std::move(w))));
    int j = 0;
    while (j < m && ++digits[j] == steps) digits[j++] = 0;
    if (j == m) break;
  }
  return BidGrid{std::vector<std::vector<TabulatedPtr>>(n, bids)};
}

Money default_grid_delta(const BidProfile& types) {
  Money g;
  for (int i = 0; i < types.agent_count(); ++i)
    for (const auto& v : types.table(i).values) g = rational_gcd(g, v);
  const Money floor_delta(1, 8);
  return g.is_zero() ? floor_delta : max(g, floor_delta);
}

Money default_grid_cap(const BidProfile& types) {
  Money cap;
  for (int i = 0; i < types.agent_count(); ++i)
    for (int j = 0; j < types.item_count(); ++j) cap = max(cap, types.table(i)[Bundle::single(j)]);
  return max(cap, default_grid_delta(types));
}

BidGrid default_grid(const BidProfile& types) {
  return additive_grid(types.agent_count(), types.item_count(), default_grid_delta(types), default_grid_cap(types));
}

ExtendedMoney exposure_factor_bound(const ValueTable& v, const ValueTable& b) {
  if (v.m != b.m) throw std::invalid_argument("exposure_factor_bound: item count mismatch");
  Money worst;
  for (std::size_t s = 0; s < v.values.size(); ++s) {
    if (v.values[s].is_zero()) {
      if (b.values[s].is_positive()) return ExtendedMoney::infinity();
      continue;
    }
    worst = max(worst, b.values[s] / v.values[s] - Money(1));
  }
  return worst;
}

ExtendedMoney exposure_factor_bound(const Valuation& v, const Valuation& b) {
  return exposure_factor_bound(v.tabulate(), b.tabulate());
}

ExtendedMoney welfare_ratio(const Money& optimal, const Money& achieved) {
  if (achieved.is_zero()) return optimal.is_zero() ? ExtendedMoney(Money(1)) : ExtendedMoney::infinity();
  return optimal / achieved;
}

std::string_view to_string(DeviationSource s) {
  switch (s) {
    case DeviationSource::Grid: return "grid";
    case DeviationSource::Current: return "current";
    case DeviationSource::Truthful: return "truthful";
    case DeviationSource::HalfTruthful: return "half-truthful";
  }
  return "?";
}

NashReport verify_nash(const BidProfile& types, PaymentRule rule, const BidProfile& bids, const BidGrid& grid,
                       const Money& eps_dev) {
  const int n = types.agent_count();
  if (bids.agent_count() != n || bids.item_count() != types.item_count())
    throw std::invalid_argument("verify_nash: bid profile does not match the instance");
  if (grid.agent_count() != n) throw std::invalid_argument("verify_nash: grid does not match the instance");

  NashReport report;
  report.eps_dev = eps_dev;
  report.outcome = run_mechanism(rule, bids);
  report.welfare = true_welfare(types, report.outcome.allocation);
  report.optimal_welfare = welfare_value(types, ItemMultiset::ones(types.item_count()));
  report.ratio = welfare_ratio(report.optimal_welfare, report.welfare);
  report.is_nash = true;

  for (int i = 0; i < n; ++i) {
    const Money current = utility(types.table(i), report.outcome, i);
    report.utilities.push_back(current);

    Deviation best{bids.shared(i), DeviationSource::Current, 0, current, Money()};
    auto consider = [&](const TabulatedPtr& cand, DeviationSource src, std::size_t idx) {
      auto outcome = run_mechanism(rule, bids.with_bid(i, cand));
      Money u = utility(types.table(i), outcome, i);
      if (best.utility < u) best = Deviation{cand, src, idx, std::move(u), Money()};
    };
    for (std::size_t k = 0; k < grid.size(i); ++k) consider(grid.candidates[i][k], DeviationSource::Grid, k);
    consider(types.shared(i), DeviationSource::Truthful, 0);
    consider(half_truthful(types, i), DeviationSource::HalfTruthful, 0);

    best.gain = best.utility - current;
    if (eps_dev < best.gain) report.is_nash = false;
    report.best_deviation.push_back(std::move(best));
  }
  return report;
}

BidProfile construct_efficient_profile(const BidProfile& types) {
  const int m = types.item_count();
  const int n = types.agent_count();
  for (int i = 0; i < n; ++i)
    if (!is_gross_substitutes(types.table(i)))
      throw std::invalid_argument("construct_efficient_profile: type of agent " + std::to_string(i) +
                                  " is not gross substitutes");

  const PriceVector p = min_walrasian_prices(types);
  const Allocation alloc = optimal_allocation(types);

  std::vector<Bundle> kept(n);
  Money smallest_marginal;
  bool any_bump = false;
  for (int i = 0; i < n; ++i) {
    const ValueTable& t = types.table(i);
    Bundle b = alloc[i];
    for (int j : alloc[i].items())
      if (p[j].is_zero() && t[b.without(j)] == t[b]) b = b.without(j);
    kept[i] = b;
    for (int j : b.items()) {
      if (!p[j].is_zero()) continue;
      Money marginal = t[b] - t[b.without(j)];
      if (!any_bump || marginal < smallest_marginal) smallest_marginal = marginal;
      any_bump = true;
    }
  }
  const Money bump = any_bump ? smallest_marginal / Money(4L * m) : Money();

  std::vector<Valuation> bids;
  for (int i = 0; i < n; ++i) {
    WeightVector w(m);
    for (int j : kept[i].items()) w[j] = p[j].is_zero() ? bump : p[j];
    bids.push_back(Valuation::additive(std::move(w)));
  }
  return BidProfile(m, std::move(bids));
}

SmoothnessReport smoothness_certificate(const BidProfile& types, const BidProfile& bids, PaymentRule rule) {
  const int n = types.agent_count();
  const int m = types.item_count();
  SmoothnessReport r;
  r.rule = rule;

  const auto outcome = run_mechanism(rule, bids);
  r.payments_within_bids = outcome.payments_within_bids(bids);
  r.declared_welfare = allocation_value(bids, outcome.allocation);

  const Allocation opt = optimal_allocation(types);
  const Money optimum = allocation_value(types, opt);
  r.half_optimum = optimum * half();
  r.agent_terms_hold = true;

  for (int i = 0; i < n; ++i) {
    const BidProfile deviated = bids.with_bid(i, half_truthful(types, i));
    const auto dev = run_mechanism(rule, deviated);
    r.payments_within_bids = r.payments_within_bids && dev.payments_within_bids(deviated);
    SmoothnessAgentTerm term;
    term.agent = i;
    term.deviation_bundle = dev.allocation[i];
    term.deviation_utility = utility(types.table(i), dev, i);
    const auto rest = ItemMultiset::from_bundle(Bundle::full(m) - opt[i], m);
    const auto own = ItemMultiset::from_bundle(opt[i], m);
    term.bound = types.table(i)[opt[i]] * half() - welfare_marginal_excluding(bids, i, own, rest);
    term.holds = term.bound <= term.deviation_utility;
    r.agent_terms_hold = r.agent_terms_hold && term.holds;
    r.deviation_utility_sum += term.deviation_utility;
    r.agents.push_back(std::move(term));
  }
  r.slack = r.deviation_utility_sum - (r.half_optimum - r.declared_welfare);
  r.holds = !r.slack.is_negative();
  return r;
}

VcgDeviationReport vcg_deviation_certificate(const BidProfile& types, const BidProfile& bids) {
  const int n = types.agent_count();
  const int m = types.item_count();
  VcgDeviationReport r;
  const Allocation opt = optimal_allocation(types);
  r.optimum = allocation_value(types, opt);
  r.declared_welfare = welfare_value(bids, ItemMultiset::ones(m));
  r.agent_terms_hold = true;
  for (int i = 0; i < n; ++i) {
    const auto dev = run_mechanism(PaymentRule::Vcg, bids.with_bid(i, types.shared(i)));
    VcgAgentTerm term;
    term.agent = i;
    term.truthful_utility = utility(types.table(i), dev, i);
    term.externality = welfare_marginal_excluding(bids, i, ItemMultiset::from_bundle(opt[i], m),
                                                  ItemMultiset::from_bundle(Bundle::full(m) - opt[i], m));
    term.bound = types.table(i)[opt[i]] - term.externality;
    term.holds = term.bound <= term.truthful_utility;
    r.agent_terms_hold = r.agent_terms_hold && term.holds;
    r.utility_sum += term.truthful_utility;
    r.externality_sum += term.externality;
    r.agents.push_back(std::move(term));
  }
  r.aggregate_holds = r.optimum - r.externality_sum <= r.utility_sum;
  return r;
}

MarginalSumReport marginal_sum_bound(const BidProfile& bids, const Allocation& partition) {
  const int m = bids.item_count();
  validate_partition(partition, bids.agent_count(), m);
  MarginalSumReport r;
  for (int i = 0; i < bids.agent_count(); ++i)
    r.sum += welfare_marginal_excluding(bids, i, ItemMultiset::from_bundle(partition[i], m),
                                        ItemMultiset::from_bundle(Bundle::full(m) - partition[i], m));
  r.welfare = welfare_value(bids, ItemMultiset::ones(m));
  r.factor1_holds = r.sum <= r.welfare;
  r.factor2_holds = r.sum <= r.welfare * Money(2);
  r.all_gross_substitutes = true;
  r.all_xos = true;
  for (int i = 0; i < bids.agent_count(); ++i) {
    if (bids.bid(i).kind() == ValuationKind::Tabular) r.all_xos = false;
    if (r.all_gross_substitutes && !is_gross_substitutes(bids.table(i))) r.all_gross_substitutes = false;
  }
  return r;
}

Valuation half_clause_deviation(const Valuation& v, Bundle target) {
  WeightVector w = xos_supporting_clause(v, target);
  for (auto& x : w) x *= half();
  return Valuation::additive(std::move(w));
}

PoaReport poa_search(const BidProfile& types, PaymentRule rule, const BidGrid& grid, const Money& gamma,
                     const PoaOptions& options) {
  const int n = types.agent_count();
  const int m = types.item_count();
  if (grid.agent_count() != n) throw std::invalid_argument("poa_search: grid does not match the instance");
  if (gamma.is_negative()) throw std::invalid_argument("poa_search: gamma must be non-negative");

  // Per-agent deviation sets: grid bids first, then truthful and half-truthful.
  std::vector<std::vector<TabulatedPtr>> cands(n);
  std::vector<std::vector<bool>> low_exposure(n);
  for (int i = 0; i < n; ++i) {
    if (grid.size(i) == 0) throw std::invalid_argument("poa_search: empty grid for an agent");
    cands[i] = grid.candidates[i];
    cands[i].push_back(types.shared(i));
    cands[i].push_back(half_truthful(types, i));
    for (const auto& c : cands[i]) low_exposure[i].push_back(exposure_factor_bound(types.table(i), c->table) <= gamma);
  }

  std::vector<std::uint64_t> stride(n);
  double total_d = 1;
  std::uint64_t total = 1;
  for (int i = n - 1; i >= 0; --i) {
    stride[i] = total;
    total_d *= static_cast<double>(cands[i].size());
    total *= cands[i].size();
  }
  if (total_d > static_cast<double>(options.budget))
    throw std::length_error("poa_search: " + std::to_string(total_d) + " outcome evaluations exceed budget " +
                            std::to_string(options.budget));

  auto decode = [&](std::uint64_t k) {
    std::vector<std::size_t> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = (k / stride[i]) % cands[i].size();
    return idx;
  };
  auto profile_of = [&](const std::vector<std::size_t>& idx) {
    std::vector<TabulatedPtr> bids(n);
    for (int i = 0; i < n; ++i) bids[i] = cands[i][idx[i]];
    return BidProfile(m, std::move(bids));
  };

  std::vector<Money> util(total * n);
  std::vector<Money> welfare(total);
  parallel_for(total, options.jobs, [&](std::uint64_t k) {
    const auto outcome = run_mechanism(rule, profile_of(decode(k)));
    for (int i = 0; i < n; ++i) util[k * n + i] = utility(types.table(i), outcome, i);
    welfare[k] = true_welfare(types, outcome.allocation);
  });

  PoaReport report;
  report.rule = rule;
  report.gamma = gamma;
  report.optimal_welfare = welfare_value(types, ItemMultiset::ones(m));

  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    ++report.profiles_examined;
    std::uint64_t k = 0;
    for (int i = 0; i < n; ++i) k += idx[i] * stride[i];

    bool admissible = true;
    for (int i = 0; i < n && admissible; ++i) admissible = low_exposure[i][idx[i]];
    for (int i = 0; i < n && admissible; ++i) {
      const Money& current = util[k * n + i];
      const std::uint64_t base = k - idx[i] * stride[i];
      for (std::size_t c = 0; c < cands[i].size(); ++c) {
        if (current + options.eps_dev < util[(base + c * stride[i]) * n + i]) {
          admissible = false;
          break;
        }
      }
    }
    if (admissible) {
      ++report.equilibria;
      ExtendedMoney ratio = welfare_ratio(report.optimal_welfare, welfare[k]);
      if (!report.witness || report.worst_ratio < ratio) {
        report.worst_ratio = ratio;
        report.witness = profile_of(idx);
        report.witness_welfare = welfare[k];
      }
    }

    int i = n - 1;
    while (i >= 0 && ++idx[i] == grid.size(i)) idx[i--] = 0;
    if (i < 0) break;
  }
  return report;
}

std::string_view to_string(DynamicsStatus s) {
  switch (s) {
    case DynamicsStatus::Converged: return "converged";
    case DynamicsStatus::Cycle: return "cycle";
    case DynamicsStatus::BudgetExhausted: return "budget";
  }
  return "?";
}

namespace {

bool same_bids(const BidProfile& a, const BidProfile& b) {
  for (int i = 0; i < a.agent_count(); ++i)
    if (a.shared(i) != b.shared(i) && !(a.bid(i) == b.bid(i))) return false;
  return true;
}

}  // namespace

DynamicsTrace best_response_dynamics(const BidProfile& types, PaymentRule rule, const BidGrid& grid,
                                     const BidProfile& start, int max_passes) {
  const int n = types.agent_count();
  if (start.agent_count() != n || start.item_count() != types.item_count())
    throw std::invalid_argument("best_response_dynamics: start profile does not match the instance");
  if (grid.agent_count() != n) throw std::invalid_argument("best_response_dynamics: grid does not match");

  DynamicsTrace trace;
  trace.profiles.push_back(start);
  BidProfile current = start;
  for (int pass = 0; pass < max_passes; ++pass) {
    trace.passes = pass + 1;
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      const Money now = utility(types.table(i), run_mechanism(rule, current), i);
      std::vector<TabulatedPtr> options = grid.candidates[i];
      options.push_back(types.shared(i));
      options.push_back(half_truthful(types, i));
      std::optional<std::size_t> best;
      Money best_u = now;
      for (std::size_t c = 0; c < options.size(); ++c) {
        Money u = utility(types.table(i), run_mechanism(rule, current.with_bid(i, options[c])), i);
        if (best_u < u) {
          best_u = std::move(u);
          best = c;
        }
      }
      if (!best) continue;
      current = current.with_bid(i, options[*best]);
      changed = true;
      for (const auto& seen : trace.profiles) {
        if (same_bids(seen, current)) {
          trace.profiles.push_back(current);
          trace.status = DynamicsStatus::Cycle;
          return trace;
        }
      }
      trace.profiles.push_back(current);
    }
    if (!changed) {
      trace.status = DynamicsStatus::Converged;
      return trace;
    }
  }
  trace.status = DynamicsStatus::BudgetExhausted;
  return trace;
}

}  // namespace walras
