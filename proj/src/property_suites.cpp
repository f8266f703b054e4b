#include "walras/property_suites.hpp"

#include <stdexcept>

#include "walras/analysis.hpp"
#include "walras/fixtures.hpp"
#include "walras/rng.hpp"

namespace walras {

void PropertyCheck::record(bool ok, const std::function<Json()>& witness) {
  ++trials;
  if (ok) return;
  ++failures;
  if (!first_counterexample) first_counterexample = witness();
}

bool PropertyReport::passed() const {
  for (const auto& c : checks)
    if (c.failures != 0) return false;
  return true;
}

const PropertyCheck& PropertyReport::check(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no check named '" + std::string(name) + "'");
}

Json PropertyReport::to_json() const {
  Json j;
  j["suite"] = suite;
  j["seeds"] = seeds;
  j["base_seed"] = base_seed;
  j["passed"] = passed();
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json x;
    x["name"] = c.name;
    x["trials"] = c.trials;
    x["failures"] = c.failures;
    x["first_counterexample"] = c.first_counterexample ? *c.first_counterexample : Json(nullptr);
    cs.push_back(std::move(x));
  }
  j["checks"] = std::move(cs);
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

std::vector<std::string> property_suites() { return {"lemmas", "ordering", "smoothness", "lattice", "all"}; }

namespace {

constexpr ValuationClass kGsClasses[3] = {ValuationClass::Additive, ValuationClass::UnitDemand, ValuationClass::Oxs};

BidProfile sample_profile(int n, int m, std::uint64_t seed, const DrawShape& shape, bool xos) {
  Rng rng(seed);
  SampleOptions opts;
  opts.denominator = shape.denominator;
  std::vector<Valuation> vals;
  for (int i = 0; i < n; ++i) {
    const ValuationClass cls = xos ? ValuationClass::Xos : kGsClasses[rng.uniform(0, 2)];
    vals.push_back(sample_valuation(cls, m, shape.cap, mix_seed(seed, 100 + i), opts));
  }
  return BidProfile(m, std::move(vals));
}

BidProfile sample_shaped(std::uint64_t seed, const DrawShape& shape, bool xos) {
  Rng rng(seed);
  const int n = static_cast<int>(rng.uniform(shape.min_agents, shape.max_agents));
  const int m = static_cast<int>(rng.uniform(shape.min_items, shape.max_items));
  return sample_profile(n, m, rng.next(), shape, xos);
}

Json profile_json(const BidProfile& p) { return instance_to_json(fixtures::to_instance_file("", p)); }

Json pair_json(const BidProfile& types, const BidProfile& bids) {
  return instance_to_json(fixtures::to_instance_file("", types, bids));
}

PropertyCheck& add(PropertyReport& r, std::string name) {
  PropertyCheck c;
  c.name = std::move(name);
  r.checks.push_back(std::move(c));
  return r.checks.back();
}

std::uint64_t draw_seed(std::uint64_t base, std::uint64_t suite_tag, int k) {
  return mix_seed(mix_seed(base, suite_tag), static_cast<std::uint64_t>(k));
}

void lemmas(PropertyReport& r, int seeds, std::uint64_t base) {
  std::size_t gs_class = r.checks.size();
  add(r, "gs bids pass substitutes check");
  std::size_t f1 = r.checks.size();
  add(r, "marginal sum <= W (gs bids)");
  std::size_t f2 = r.checks.size();
  add(r, "marginal sum <= 2W (xos bids)");
  for (int k = 0; k < seeds; ++k) {
    const std::uint64_t s = draw_seed(base, 1, k);
    const BidProfile gs = sample_gs_profile(mix_seed(s, 0));
    const BidProfile xos = sample_xos_profile(mix_seed(s, 1));
    bool all_gs = true;
    for (int i = 0; i < gs.agent_count(); ++i) all_gs = all_gs && is_gross_substitutes(gs.table(i));
    r.checks[gs_class].record(all_gs, [&] { return profile_json(gs); });
    for (int t = 0; t < 10; ++t) {
      const Allocation part = sample_partition(gs.agent_count(), gs.item_count(), mix_seed(s, 10 + t));
      const auto rep = marginal_sum_bound(gs, part);
      r.checks[f1].record(rep.factor1_holds, [&] {
        return Json{{"instance", profile_json(gs)},
                    {"partition", allocation_to_json(part)},
                    {"sum", money_to_json(rep.sum)},
                    {"welfare", money_to_json(rep.welfare)}};
      });
      const Allocation xpart = sample_partition(xos.agent_count(), xos.item_count(), mix_seed(s, 30 + t));
      const auto xrep = marginal_sum_bound(xos, xpart);
      r.checks[f2].record(xrep.factor2_holds, [&] {
        return Json{{"instance", profile_json(xos)},
                    {"partition", allocation_to_json(xpart)},
                    {"sum", money_to_json(xrep.sum)},
                    {"welfare", money_to_json(xrep.welfare)}};
      });
    }
  }
}

void ordering(PropertyReport& r, int seeds, std::uint64_t base) {
  std::size_t chain = r.checks.size();
  add(r, "vcg <= english <= dutch <= paybid");
  std::size_t clear = r.checks.size();
  add(r, "english and dutch prices clear the declared market");
  for (int k = 0; k < seeds; ++k) {
    const BidProfile p = sample_gs_profile(draw_seed(base, 2, k));
    const auto rep = check_payment_ordering(p);
    auto witness = [&] {
      Json agents = Json::array();
      for (const auto& a : rep.agents)
        agents.push_back({{"agent", a.agent},
                          {"vcg", money_to_json(a.vcg)},
                          {"english", money_to_json(a.english)},
                          {"dutch", money_to_json(a.dutch)},
                          {"paybid", money_to_json(a.pay_your_bid)}});
      return Json{{"instance", profile_json(p)}, {"allocation", allocation_to_json(rep.allocation)}, {"agents", agents}};
    };
    r.checks[chain].record(rep.holds(), witness);
    r.checks[clear].record(rep.english_prices_walrasian && rep.dutch_prices_walrasian, witness);
  }
  Json family = Json::array();
  bool witness_found = false;
  for (const auto& member : fixtures::ranking_family()) {
    const auto rep = check_payment_ordering(member.profile);
    bool vcg_above = false;
    for (const auto& a : rep.agents) vcg_above = vcg_above || !a.vcg_le_english;
    witness_found = witness_found || vcg_above;
    family.push_back({{"name", member.name},
                      {"vcg_exceeds_english", vcg_above},
                      {"english_prices_walrasian", rep.english_prices_walrasian}});
  }
  r.notes["submodular_family"] = std::move(family);
  r.notes["submodular_vcg_exceeds_english_witness"] = witness_found;
}

void smoothness(PropertyReport& r, int seeds, std::uint64_t base) {
  std::size_t first = r.checks.size();
  for (PaymentRule rule : kAllRules) add(r, "smoothness inequality (" + std::string(to_string(rule)) + ")");
  std::size_t within = r.checks.size();
  add(r, "payments within bids on every outcome");
  std::size_t vcg_dev = r.checks.size();
  add(r, "vcg truthful-deviation inequality");
  for (int k = 0; k < seeds; ++k) {
    const std::uint64_t s = draw_seed(base, 3, k);
    const BidProfile types = sample_gs_profile(mix_seed(s, 0));
    const BidProfile bids = sample_gs_profile_like(types, mix_seed(s, 1));
    for (std::size_t ri = 0; ri < kAllRules.size(); ++ri) {
      const auto rep = smoothness_certificate(types, bids, kAllRules[ri]);
      auto witness = [&] {
        return Json{{"instance", pair_json(types, bids)},
                    {"rule", std::string(to_string(kAllRules[ri]))},
                    {"deviation_utility_sum", money_to_json(rep.deviation_utility_sum)},
                    {"half_optimum", money_to_json(rep.half_optimum)},
                    {"declared_welfare", money_to_json(rep.declared_welfare)}};
      };
      r.checks[first + ri].record(rep.holds, witness);
      r.checks[within].record(rep.payments_within_bids, witness);
    }
    const auto v = vcg_deviation_certificate(types, bids);
    r.checks[vcg_dev].record(v.agent_terms_hold && v.aggregate_holds, [&] {
      return Json{{"instance", pair_json(types, bids)},
                  {"utility_sum", money_to_json(v.utility_sum)},
                  {"optimum", money_to_json(v.optimum)},
                  {"externality_sum", money_to_json(v.externality_sum)}};
    });
  }
}

void lattice(PropertyReport& r, int seeds, std::uint64_t base) {
  std::size_t order = r.checks.size();
  add(r, "min prices <= max prices");
  std::size_t min_we = r.checks.size();
  add(r, "min prices support the optimal allocation");
  std::size_t max_we = r.checks.size();
  add(r, "max prices support the optimal allocation");
  std::size_t tat = r.checks.size();
  add(r, "ascending prices within m*eps of min prices");
  const Money eps(1, 64);
  for (int k = 0; k < seeds; ++k) {
    const BidProfile p = sample_gs_profile(draw_seed(base, 4, k));
    const PriceVector lo = min_walrasian_prices(p);
    const PriceVector hi = max_walrasian_prices(p);
    const Allocation opt = optimal_allocation(p);
    auto witness = [&] {
      return Json{{"instance", profile_json(p)},
                  {"min_prices", prices_to_json(lo)},
                  {"max_prices", prices_to_json(hi)},
                  {"allocation", allocation_to_json(opt)}};
    };
    r.checks[order].record(lo.leq(hi), witness);
    r.checks[min_we].record(verify_walrasian_equilibrium(p, opt, lo).is_equilibrium, witness);
    r.checks[max_we].record(verify_walrasian_equilibrium(p, opt, hi).is_equilibrium, witness);
    const auto t = tatonnement(p, eps);
    const Money tol = eps * Money(static_cast<long>(p.item_count()));
    bool close = true;
    for (int j = 0; j < p.item_count(); ++j) close = close && abs(t.prices[j] - lo[j]) <= tol;
    r.checks[tat].record(close, [&] {
      Json w = witness();
      w["ascending_prices"] = prices_to_json(t.prices);
      return w;
    });
  }
  // Without substitutes the lattice can be empty: no price vector supports
  // any allocation of the AND-bidder market.
  const BidProfile andp = fixtures::and_bidder_types();
  const Allocation andopt = optimal_allocation(andp);
  auto& spot = add(r, "and-bidder market has no supporting prices at spot checks");
  for (const PriceVector& pv : {PriceVector({1, 1}), min_walrasian_prices(andp), max_walrasian_prices(andp),
                                PriceVector({Money(3, 4), Money(3, 4)}), PriceVector({Money(3, 2), Money(3, 2)})}) {
    spot.record(!verify_walrasian_equilibrium(andp, andopt, pv).is_equilibrium,
                [&] { return Json{{"instance", profile_json(andp)}, {"prices", prices_to_json(pv)}}; });
  }
}

}  // namespace

BidProfile sample_gs_profile(std::uint64_t seed, const DrawShape& shape) { return sample_shaped(seed, shape, false); }

BidProfile sample_xos_profile(std::uint64_t seed, const DrawShape& shape) { return sample_shaped(seed, shape, true); }

BidProfile sample_gs_profile_like(const BidProfile& like, std::uint64_t seed, const DrawShape& shape) {
  return sample_profile(like.agent_count(), like.item_count(), seed, shape, false);
}

Allocation sample_partition(int n, int m, std::uint64_t seed) {
  Rng rng(seed);
  Allocation a(n);
  for (int j = 0; j < m; ++j) {
    const auto i = rng.uniform(0, n - 1);
    a[i] = a[i].with(j);
  }
  return a;
}

PropertyReport run_property_suite(std::string_view suite, int seeds, std::uint64_t base_seed) {
  if (seeds < 0) throw std::invalid_argument("seed count must be non-negative");
  PropertyReport r;
  r.suite = std::string(suite);
  r.seeds = seeds;
  r.base_seed = base_seed;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "lemmas") known = true, lemmas(r, seeds, base_seed);
  if (all || suite == "ordering") known = true, ordering(r, seeds, base_seed);
  if (all || suite == "smoothness") known = true, smoothness(r, seeds, base_seed);
  if (all || suite == "lattice") known = true, lattice(r, seeds, base_seed);
  if (!known) throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
  return r;
}

}  // namespace walras
