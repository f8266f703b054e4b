#include "walras/mechanisms.hpp"

#include <stdexcept>
#include <string>

namespace walras {

std::string_view to_string(PaymentRule r) {
  switch (r) {
    case PaymentRule::Vcg: return "vcg";
    case PaymentRule::EnglishWalrasian: return "english";
    case PaymentRule::DutchWalrasian: return "dutch";
    case PaymentRule::PayYourBid: return "paybid";
  }
  return "?";
}

PaymentRule parse_payment_rule(std::string_view name) {
  if (name == "vcg") return PaymentRule::Vcg;
  if (name == "english") return PaymentRule::EnglishWalrasian;
  if (name == "dutch") return PaymentRule::DutchWalrasian;
  if (name == "paybid" || name == "pay-your-bid") return PaymentRule::PayYourBid;
  throw std::invalid_argument("unknown payment rule '" + std::string(name) + "'");
}

bool MechanismOutcome::payments_within_bids(const BidProfile& bids) const {
  for (int i = 0; i < bids.agent_count(); ++i) {
    if (payments[i].is_negative()) return false;
    if (bids.table(i)[allocation[i]] < payments[i]) return false;
  }
  return true;
}

Allocation allocate_declared(const BidProfile& bids) { return optimal_allocation(bids); }

namespace {

std::vector<Money> price_payments(const PriceVector& p, const Allocation& alloc) {
  std::vector<Money> out;
  out.reserve(alloc.size());
  for (const auto& b : alloc) out.push_back(p.cost(b));
  return out;
}

std::vector<Money> vcg_payments(const BidProfile& bids, const Allocation& alloc) {
  const int m = bids.item_count();
  const auto ones = ItemMultiset::ones(m);
  std::vector<Money> out;
  for (int i = 0; i < bids.agent_count(); ++i) {
    auto rest = ItemMultiset::from_bundle(Bundle::full(m) - alloc[i], m);
    out.push_back(welfare_value(bids, ones, i) - welfare_value(bids, rest, i));
  }
  return out;
}

PaymentResult compute_payments(PaymentRule rule, const BidProfile& bids, const Allocation& alloc) {
  PaymentResult out;
  switch (rule) {
    case PaymentRule::Vcg:
      out.payments = vcg_payments(bids, alloc);
      break;
    case PaymentRule::EnglishWalrasian:
      out.prices = min_walrasian_prices(bids);
      out.payments = price_payments(*out.prices, alloc);
      break;
    case PaymentRule::DutchWalrasian:
      out.prices = max_walrasian_prices(bids);
      out.payments = price_payments(*out.prices, alloc);
      break;
    case PaymentRule::PayYourBid:
      for (int i = 0; i < bids.agent_count(); ++i) out.payments.push_back(bids.table(i)[alloc[i]]);
      break;
  }
  return out;
}

}  // namespace

PaymentResult payments(PaymentRule rule, const BidProfile& bids, const Allocation& alloc) {
  validate_partition(alloc, bids.agent_count(), bids.item_count());
  if (alloc != allocate_declared(bids))
    throw std::invalid_argument("payments: allocation is not the declared-welfare-maximizing allocation");
  return compute_payments(rule, bids, alloc);
}

MechanismOutcome run_mechanism(PaymentRule rule, const BidProfile& bids) {
  MechanismOutcome out;
  out.rule = rule;
  out.allocation = allocate_declared(bids);
  auto pay = compute_payments(rule, bids, out.allocation);
  out.payments = std::move(pay.payments);
  out.prices_used = std::move(pay.prices);
  return out;
}

Money utility(const Valuation& true_v, const MechanismOutcome& outcome, int i) {
  return true_v.evaluate(outcome.allocation.at(i)) - outcome.payments.at(i);
}

Money utility(const ValueTable& true_v, const MechanismOutcome& outcome, int i) {
  return true_v[outcome.allocation.at(i)] - outcome.payments.at(i);
}

bool PaymentOrderingReport::holds() const {
  for (const auto& a : agents)
    if (!a.holds()) return false;
  return true;
}

PaymentOrderingReport check_payment_ordering(const BidProfile& bids) {
  PaymentOrderingReport report;
  report.allocation = allocate_declared(bids);
  const auto vcg = compute_payments(PaymentRule::Vcg, bids, report.allocation);
  const auto eng = compute_payments(PaymentRule::EnglishWalrasian, bids, report.allocation);
  const auto dut = compute_payments(PaymentRule::DutchWalrasian, bids, report.allocation);
  const auto pyb = compute_payments(PaymentRule::PayYourBid, bids, report.allocation);
  for (int i = 0; i < bids.agent_count(); ++i) {
    AgentPaymentChain c{i,
                        report.allocation[i],
                        vcg.payments[i],
                        eng.payments[i],
                        dut.payments[i],
                        pyb.payments[i],
                        false,
                        false,
                        false};
    c.vcg_le_english = c.vcg <= c.english;
    c.english_le_dutch = c.english <= c.dutch;
    c.dutch_le_bid = c.dutch <= c.pay_your_bid;
    report.agents.push_back(std::move(c));
  }
  report.english_prices_walrasian =
      verify_walrasian_equilibrium(bids, report.allocation, *eng.prices).is_equilibrium;
  report.dutch_prices_walrasian = verify_walrasian_equilibrium(bids, report.allocation, *dut.prices).is_equilibrium;
  return report;
}

}  // namespace walras
