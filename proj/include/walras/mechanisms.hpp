#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "walras/walrasian.hpp"
#include "walras/welfare.hpp"

namespace walras {

// Payment rules of the declared welfare maximizers. All four share the
// allocation rule; they differ only in what winners are charged.
enum class PaymentRule {
  Vcg,               // W^{b_-i}(x_i | 𝟙 - x_i)
  EnglishWalrasian,  // min Walrasian prices of the declared market
  DutchWalrasian,    // max Walrasian prices of the declared market
  PayYourBid,        // b_i(x_i)
};

inline constexpr std::array<PaymentRule, 4> kAllRules = {PaymentRule::Vcg, PaymentRule::EnglishWalrasian,
                                                         PaymentRule::DutchWalrasian, PaymentRule::PayYourBid};

std::string_view to_string(PaymentRule r);
// Accepts "vcg", "english", "dutch", "paybid".
PaymentRule parse_payment_rule(std::string_view name);

struct MechanismOutcome {
  PaymentRule rule;
  Allocation allocation;
  std::vector<Money> payments;
  std::optional<PriceVector> prices_used;  // English and Dutch only

  // No agent pays more than its declared value for the bundle it receives.
  bool payments_within_bids(const BidProfile& bids) const;
};

// The canonical bid-optimal full partition.
Allocation allocate_declared(const BidProfile& bids);

struct PaymentResult {
  std::vector<Money> payments;
  std::optional<PriceVector> prices;
};

// Throws std::invalid_argument when alloc differs from allocate_declared(bids).
PaymentResult payments(PaymentRule rule, const BidProfile& bids, const Allocation& alloc);

MechanismOutcome run_mechanism(PaymentRule rule, const BidProfile& bids);

// true_v(x_i) - payment_i; may be negative.
Money utility(const Valuation& true_v, const MechanismOutcome& outcome, int i);
Money utility(const ValueTable& true_v, const MechanismOutcome& outcome, int i);

struct AgentPaymentChain {
  int agent;
  Bundle bundle;
  Money vcg, english, dutch, pay_your_bid;
  bool vcg_le_english, english_le_dutch, dutch_le_bid;

  bool holds() const { return vcg_le_english && english_le_dutch && dutch_le_bid; }
};

struct PaymentOrderingReport {
  Allocation allocation;
  std::vector<AgentPaymentChain> agents;
  // Whether the English / Dutch price vectors clear the declared market.
  bool english_prices_walrasian = false;
  bool dutch_prices_walrasian = false;

  bool holds() const;
};

// Evaluates Vcg <= English <= Dutch <= PayYourBid per agent on one allocation.
PaymentOrderingReport check_payment_ordering(const BidProfile& bids);

}  // namespace walras
