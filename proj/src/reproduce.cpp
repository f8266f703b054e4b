#include "walras/reproduce.hpp"

#include <stdexcept>

#include "walras/analysis.hpp"
#include "walras/fixtures.hpp"

namespace walras {

bool ReproductionReport::passed() const { return first_failure() == nullptr; }

const Fact* ReproductionReport::first_failure() const {
  for (const auto& f : facts)
    if (!f.passed) return &f;
  return nullptr;
}

Json ReproductionReport::to_json() const {
  Json j;
  j["scenario"] = scenario;
  j["epsilon"] = money_to_json(epsilon);
  j["passed"] = passed();
  Json fs = Json::array();
  for (const auto& f : facts) fs.push_back({{"name", f.name}, {"kind", f.kind}, {"value", f.value}, {"passed", f.passed}});
  j["facts"] = std::move(fs);
  return j;
}

std::vector<std::string> reproduction_scenarios() {
  return {"example1", "example2", "overbidding", "bullying", "payment-ranking"};
}

namespace {

class Recorder {
 public:
  explicit Recorder(ReproductionReport& r) : r_(r) {}

  void check(std::string name, bool ok, std::string value) {
    r_.facts.push_back({std::move(name), "asserted", std::move(value), ok});
  }
  void equal(std::string name, const Money& actual, const Money& expected) {
    check(std::move(name), actual == expected, actual.to_string() + " (expected " + expected.to_string() + ")");
  }
  void record(std::string name, std::string value) {
    r_.facts.push_back({std::move(name), "recorded", std::move(value), true});
  }

 private:
  ReproductionReport& r_;
};

std::string alloc_str(const Allocation& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + a[i].to_string();
  return s + ")";
}

std::string payments_str(const std::vector<Money>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + p[i].to_string();
  return s + ")";
}

void overbidding(Recorder& rec) {
  const BidProfile types = fixtures::overbidding_types();
  const auto ones = ItemMultiset::ones(3);
  const auto sol = welfare_max(types, ones);
  rec.equal("truthful optimal welfare", sol.value, 8);
  const Allocation expected_alloc = {Bundle::of({0, 2}), Bundle::of({1}), Bundle()};
  const auto truthful = run_mechanism(PaymentRule::EnglishWalrasian, types);
  rec.check("truthful allocation ({0,2},{1},{})", truthful.allocation == expected_alloc,
            alloc_str(truthful.allocation));
  rec.check("truthful English prices (1,1,1)", *truthful.prices_used == PriceVector({1, 1, 1}),
            truthful.prices_used->to_string());
  rec.equal("agent 0 truthful utility", utility(types.bid(0), truthful, 0), 4);
  rec.equal("welfare without agent 0", welfare_excluding(types, 0, ones), 3);

  const BidProfile dev = fixtures::overbidding_deviation();
  const auto deviated = run_mechanism(PaymentRule::EnglishWalrasian, dev);
  rec.check("deviation allocation unchanged", deviated.allocation == expected_alloc, alloc_str(deviated.allocation));
  rec.check("deviation English prices (0,0,1)", *deviated.prices_used == PriceVector({0, 0, 1}),
            deviated.prices_used->to_string());
  const Money dev_utility = utility(types.bid(0), deviated, 0);
  rec.record("agent 0 deviation utility", dev_utility.to_string());
  rec.check("deviation strictly profitable", Money(4) < dev_utility, dev_utility.to_string() + " > 4");
  rec.check("deviation bid overbids on {0,2} and {2}",
            types.bid(0).evaluate(Bundle::of({0, 2})) < dev.bid(0).evaluate(Bundle::of({0, 2})) &&
                types.bid(0).evaluate(Bundle::of({2})) < dev.bid(0).evaluate(Bundle::of({2})),
            "b'(02)=" + dev.bid(0).evaluate(Bundle::of({0, 2})).to_string() +
                ", b'(2)=" + dev.bid(0).evaluate(Bundle::of({2})).to_string());
  const auto half = half_clause_deviation(dev.bid(0), Bundle::of({0, 2}));
  rec.record("half supporting clause of the deviation bid at {0,2}", half.describe());
}

void example1(Recorder& rec, const Money& eps) {
  const BidProfile types = fixtures::example1_types(eps);
  const Money opt = welfare_value(types, ItemMultiset::ones(2));
  rec.equal("optimal welfare", opt, 4);

  const auto truthful = run_mechanism(PaymentRule::EnglishWalrasian, types);
  rec.check("truthful prices (1+eps,1+eps)",
            *truthful.prices_used == PriceVector({Money(1) + eps, Money(1) + eps}),
            truthful.prices_used->to_string());
  rec.check("agent 1 wins both items", truthful.allocation[1] == Bundle::full(2), alloc_str(truthful.allocation));
  rec.equal("agent 1 truthful utility", utility(types.bid(1), truthful, 1), Money(2) - Money(2) * eps);

  const BidGrid grid = additive_grid(2, 2, Money(1, 8), Money(4));
  const auto truthful_nash = verify_nash(types, PaymentRule::EnglishWalrasian, types, grid);
  rec.check("truthful profile is not grid-Nash", !truthful_nash.is_nash,
            "agent 1 gain " + truthful_nash.best_deviation[1].gain.to_string());
  const BidProfile reduced = fixtures::example1_demand_reduction(eps);
  const auto reduced_outcome = run_mechanism(PaymentRule::EnglishWalrasian, reduced);
  const Money reduced_utility = utility(types.bid(1), reduced_outcome, 1);
  rec.equal("agent 1 utility after bidding 2x_0", reduced_utility, 2);
  rec.check("bidding 2x_0 is a profitable deviation", utility(types.bid(1), truthful, 1) < reduced_utility,
            reduced_utility.to_string());
  rec.check("best grid deviation of agent 1 reaches the 2x_0 utility",
            truthful_nash.best_deviation[1].utility == reduced_utility &&
                truthful_nash.best_deviation[1].bid->valuation.evaluate(Bundle::single(1)).is_zero(),
            truthful_nash.best_deviation[1].bid->valuation.describe());
  rec.check("deviation is exposure-free",
            exposure_factor_bound(types.bid(1), reduced.bid(1)) == ExtendedMoney(Money()),
            exposure_factor_bound(types.bid(1), reduced.bid(1)).to_string());

  const auto reduced_nash = verify_nash(types, PaymentRule::EnglishWalrasian, reduced, grid);
  rec.check("demand-reduction profile is grid-Nash", reduced_nash.is_nash,
            "max gain " + max(reduced_nash.best_deviation[0].gain, reduced_nash.best_deviation[1].gain).to_string());
  rec.equal("demand-reduction welfare", reduced_nash.welfare, Money(3) + eps);
  rec.check("ratio 4/(3+eps) >= 1.28", !reduced_nash.ratio.is_infinite() && Money(128, 100) <= reduced_nash.ratio.value(),
            reduced_nash.ratio.to_string());

  const auto dyn = best_response_dynamics(types, PaymentRule::EnglishWalrasian, grid, types, 20);
  const auto final_outcome = run_mechanism(PaymentRule::EnglishWalrasian, dyn.profiles.back());
  const Money dyn_welfare = allocation_value(types, final_outcome.allocation);
  rec.check("best-response dynamics from truthful converge", dyn.status == DynamicsStatus::Converged,
            std::string(to_string(dyn.status)));
  rec.equal("best-response dynamics welfare", dyn_welfare, Money(3) + eps);

  const BidProfile efficient = construct_efficient_profile(types);
  const auto eff = run_mechanism(PaymentRule::EnglishWalrasian, efficient);
  rec.equal("efficient profile welfare", allocation_value(types, eff.allocation), 4);
  rec.check("efficient profile pays nothing", eff.payments == std::vector<Money>(2), payments_str(eff.payments));
  rec.record("efficient profile bids", efficient.bid(0).describe() + " " + efficient.bid(1).describe());
}

void example2(Recorder& rec, const Money& eps) {
  const BidProfile types = fixtures::example2_types(eps);
  const Money opt = welfare_value(types, ItemMultiset::ones(2));
  rec.equal("optimal welfare 4-2eps", opt, Money(4) - Money(2) * eps);
  rec.check("max Walrasian prices (2-eps,2-eps)",
            max_walrasian_prices(types) == PriceVector({Money(2) - eps, Money(2) - eps}),
            max_walrasian_prices(types).to_string());

  const BidProfile mis = fixtures::example2_miscoordination();
  const auto out = run_mechanism(PaymentRule::EnglishWalrasian, mis);
  rec.check("agent 0 gets B, agent 1 gets A", out.allocation == Allocation{Bundle::single(1), Bundle::single(0)},
            alloc_str(out.allocation));
  rec.check("both items priced at zero", *out.prices_used == PriceVector::zero(2), out.prices_used->to_string());
  for (const auto& delta : {Money(1, 4), Money(1, 8)}) {
    const auto nash = verify_nash(types, PaymentRule::EnglishWalrasian, mis, additive_grid(2, 2, delta, 2));
    rec.check("miscoordination is grid-Nash (delta=" + delta.to_string() + ")", nash.is_nash,
              "gains " + nash.best_deviation[0].gain.to_string() + "," + nash.best_deviation[1].gain.to_string());
  }
  bool exposure_free = true;
  for (int i = 0; i < 2; ++i) exposure_free = exposure_free && exposure_factor_bound(types.bid(i), mis.bid(i)) == ExtendedMoney(Money());
  rec.check("miscoordination bids are exposure-free", exposure_free, exposure_free ? "0" : ">0");
  const Money w = allocation_value(types, out.allocation);
  rec.equal("miscoordination welfare", w, 2);
  const Money ratio = opt / w;
  rec.check("ratio >= 2-2eps", Money(2) - Money(2) * eps <= ratio, ratio.to_string());

  const Money gamma(1);
  const BidProfile types_g = fixtures::example2_types(eps, gamma);
  const BidProfile mis_g = fixtures::example2_miscoordination(gamma);
  bool exposure_one = true;
  for (int i = 0; i < 2; ++i)
    exposure_one = exposure_one && exposure_factor_bound(types_g.bid(i), mis_g.bid(i)) == ExtendedMoney(gamma);
  rec.check("gamma=1 variant has exposure exactly 1", exposure_one,
            exposure_factor_bound(types_g.bid(0), mis_g.bid(0)).to_string());
  const auto nash_g = verify_nash(types_g, PaymentRule::EnglishWalrasian, mis_g, additive_grid(2, 2, Money(1, 8), 2));
  rec.check("gamma=1 variant is grid-Nash", nash_g.is_nash,
            "gains " + nash_g.best_deviation[0].gain.to_string() + "," + nash_g.best_deviation[1].gain.to_string());
  rec.equal("gamma=1 welfare 4/(2+gamma)", nash_g.welfare, Money(4, 3));
  rec.check("gamma=1 ratio >= (2+gamma)(1-eps)",
            !nash_g.ratio.is_infinite() && (Money(2) + gamma) * (Money(1) - eps) <= nash_g.ratio.value(),
            nash_g.ratio.to_string());

  const auto vcg = vcg_deviation_certificate(types, mis);
  rec.check("VCG deviation inequality on miscoordination", vcg.agent_terms_hold && vcg.aggregate_holds,
            "sum u=" + vcg.utility_sum.to_string() + ", OPT-ext=" + (vcg.optimum - vcg.externality_sum).to_string());
}

void bullying(Recorder& rec, const Money& eps) {
  const BidProfile types = fixtures::bullying_types(eps);
  const BidProfile bids = fixtures::bullying_bids();
  const auto out = run_mechanism(PaymentRule::Vcg, bids);
  rec.check("agent 1 wins the item", out.allocation == Allocation{Bundle(), Bundle::single(0)},
            alloc_str(out.allocation));
  rec.equal("winner pays", out.payments[1], 0);
  rec.equal("welfare eps", allocation_value(types, out.allocation), eps);
  rec.equal("winner utility", utility(types.bid(1), out, 1), eps);
  rec.equal("loser utility", utility(types.bid(0), out, 0), 0);
  const auto nash = verify_nash(types, PaymentRule::Vcg, bids, additive_grid(2, 1, Money(1, 8), 10));
  rec.check("bids (0,10) are grid-Nash", nash.is_nash, nash.best_deviation[0].gain.to_string());
  rec.record("ratio", nash.ratio.to_string());
  const auto gamma = exposure_factor_bound(types.bid(1), bids.bid(1));
  rec.check("aggressive bid has exposure 10/eps - 1", gamma == ExtendedMoney(Money(10) / eps - Money(1)),
            gamma.to_string());
}

void payment_ranking(Recorder& rec) {
  const Valuation v3 = fixtures::budget_additive_v3();
  rec.check("budget-additive valuation is submodular", is_submodular(v3.tabulate()), "true");
  rec.check("budget-additive valuation is not gross substitutes", !is_gross_substitutes(v3.tabulate()), "false");
  int witnesses = 0;
  for (const auto& member : fixtures::ranking_family()) {
    const auto report = check_payment_ordering(member.profile);
    std::string value = "alloc " + alloc_str(report.allocation);
    for (const auto& a : report.agents) {
      value += "; agent " + std::to_string(a.agent) + ": vcg=" + a.vcg.to_string() + " english=" +
               a.english.to_string() + " dutch=" + a.dutch.to_string() + " bid=" + a.pay_your_bid.to_string();
      if (!a.vcg_le_english) ++witnesses;
    }
    value += report.english_prices_walrasian ? "; english prices clear" : "; english prices do not clear";
    rec.record(member.name, value);
  }
  rec.record("vcg > english witnesses in family", std::to_string(witnesses));
}

}  // namespace

ReproductionReport reproduce(std::string_view scenario, const Money& epsilon) {
  if (!epsilon.is_positive() || Money(1, 2) <= epsilon)
    throw std::invalid_argument("epsilon must lie in (0, 1/2)");
  ReproductionReport report;
  report.scenario = std::string(scenario);
  report.epsilon = epsilon;
  Recorder rec(report);
  if (scenario == "overbidding")
    overbidding(rec);
  else if (scenario == "example1")
    example1(rec, epsilon);
  else if (scenario == "example2")
    example2(rec, epsilon);
  else if (scenario == "bullying")
    bullying(rec, epsilon);
  else if (scenario == "payment-ranking")
    payment_ranking(rec);
  else
    throw std::invalid_argument("unknown scenario '" + std::string(scenario) + "'");
  return report;
}

}  // namespace walras
