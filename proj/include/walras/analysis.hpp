#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "walras/mechanisms.hpp"
#include "walras/welfare.hpp"

namespace walras {

// Finite candidate bids per agent. Nash claims in this module are relative
// to the grid: a profile is "grid-Nash" when no agent gains more than a
// tolerance by switching to any grid bid, its truthful bid, or half of it.
struct BidGrid {
  std::vector<std::vector<TabulatedPtr>> candidates;

  int agent_count() const { return static_cast<int>(candidates.size()); }
  std::size_t size(int i) const { return candidates.at(i).size(); }
};

// Additive bids with every weight in {0, delta, 2·delta, ..., cap}, the same
// set for each of n agents. Item 0 varies fastest in the enumeration order.
BidGrid additive_grid(int n, int m, const Money& delta, const Money& cap);

// Granularity of the instance values (their rational gcd), floored at 1/8.
Money default_grid_delta(const BidProfile& types);
// Largest single-item value in the instance (at least the delta).
Money default_grid_cap(const BidProfile& types);
BidGrid default_grid(const BidProfile& types);

// Upper bound on the exposure factor of bidding b with type v:
// max over S with v(S) > 0 of b(S)/v(S) - 1, clamped at 0; infinite if some
// S has b(S) > 0 = v(S). Tight for declared welfare maximizers, since some
// opponent profile makes any bidder pay its bid on its bundle.
ExtendedMoney exposure_factor_bound(const ValueTable& v, const ValueTable& b);
ExtendedMoney exposure_factor_bound(const Valuation& v, const Valuation& b);

// OPT / welfare; 1 when both are zero, infinite when only welfare is zero.
ExtendedMoney welfare_ratio(const Money& optimal, const Money& achieved);

enum class DeviationSource { Grid, Current, Truthful, HalfTruthful };
std::string_view to_string(DeviationSource s);

struct Deviation {
  TabulatedPtr bid;
  DeviationSource source = DeviationSource::Grid;
  std::size_t grid_index = 0;  // meaningful for DeviationSource::Grid
  Money utility;
  Money gain;  // utility - current utility
};

struct NashReport {
  bool is_nash = false;
  Money eps_dev;
  MechanismOutcome outcome;
  std::vector<Money> utilities;
  std::vector<Deviation> best_deviation;  // per agent
  Money welfare;          // Σ v_i(x_i(b))
  Money optimal_welfare;  // W^v(𝟙)
  ExtendedMoney ratio;
};

NashReport verify_nash(const BidProfile& types, PaymentRule rule, const BidProfile& bids, const BidGrid& grid,
                       const Money& eps_dev = Money());

// An efficient, exposure-free equilibrium of the English Walrasian mechanism
// for gross-substitutes types: agent i bids the minimum Walrasian price on
// each item of its optimal bundle (additively, nothing elsewhere). Zero-price
// items the agent values at the margin get a bump of
// (smallest positive such marginal) / (4m); zero-price items it does not
// value at the margin are dropped from its bid.
//
// Throws std::invalid_argument when a type fails the substitutes check.
BidProfile construct_efficient_profile(const BidProfile& types);

struct SmoothnessAgentTerm {
  int agent;
  Bundle deviation_bundle;  // x'_i under (v_i/2, b_-i)
  Money deviation_utility;  // u_i(v_i/2, b_-i)
  Money bound;              // v_i(x*_i)/2 - W^{b_-i}(x*_i | 𝟙 - x*_i)
  bool holds;
};

struct SmoothnessReport {
  PaymentRule rule;
  Money deviation_utility_sum;  // Σ u_i(v_i/2, b_-i)
  Money half_optimum;           // OPT(v)/2
  Money declared_welfare;       // Σ b_i(x_i(b))
  Money slack;                  // lhs - (OPT/2 - Σ b_i(x_i(b)))
  bool holds = false;
  std::vector<SmoothnessAgentTerm> agents;
  bool agent_terms_hold = false;
  bool payments_within_bids = false;  // on every outcome evaluated
};

// Certifies Σ_i u_i(v_i/2, b_-i) >= OPT/2 - Σ_i b_i(x_i(b)) on one profile.
SmoothnessReport smoothness_certificate(const BidProfile& types, const BidProfile& bids, PaymentRule rule);

struct VcgAgentTerm {
  int agent;
  Money truthful_utility;  // u_i(v_i, b_-i) under VCG
  Money externality;       // W^{b_-i}(x*_i | 𝟙 - x*_i)
  Money bound;             // v_i(x*_i) - externality
  bool holds;
};

struct VcgDeviationReport {
  std::vector<VcgAgentTerm> agents;
  Money utility_sum;
  Money optimum;
  Money externality_sum;
  Money declared_welfare;  // W^b(𝟙)
  bool agent_terms_hold = false;
  bool aggregate_holds = false;  // Σ u >= OPT - Σ externality
};

VcgDeviationReport vcg_deviation_certificate(const BidProfile& types, const BidProfile& bids);

struct MarginalSumReport {
  Money sum;      // Σ_i W^{b_-i}(x_i | 𝟙 - x_i)
  Money welfare;  // W^b(𝟙)
  bool factor1_holds = false;
  bool factor2_holds = false;
  bool all_gross_substitutes = false;
  bool all_xos = false;  // every bid is structurally XOS (additive, unit-demand, xos, oxs)
};

// Throws std::invalid_argument if partition is not full and disjoint.
MarginalSumReport marginal_sum_bound(const BidProfile& bids, const Allocation& partition);

// Half of the clause supporting v at target, as an additive valuation.
Valuation half_clause_deviation(const Valuation& v, Bundle target);

struct PoaOptions {
  Money eps_dev;
  int jobs = 1;
  std::uint64_t budget = 5'000'000;  // max outcome evaluations
};

struct PoaReport {
  PaymentRule rule;
  Money gamma;
  ExtendedMoney worst_ratio = Money(1);
  std::optional<BidProfile> witness;
  Money witness_welfare;
  Money optimal_welfare;
  std::uint64_t equilibria = 0;
  std::uint64_t profiles_examined = 0;
};

// Enumerates every grid profile and keeps those that are grid-Nash and whose
// bids all have exposure_factor_bound <= gamma. Reports the worst welfare
// ratio among them (1 if none). Throws std::length_error when the number of
// outcome evaluations would exceed options.budget.
PoaReport poa_search(const BidProfile& types, PaymentRule rule, const BidGrid& grid, const Money& gamma,
                     const PoaOptions& options = {});

enum class DynamicsStatus { Converged, Cycle, BudgetExhausted };
std::string_view to_string(DynamicsStatus s);

struct DynamicsTrace {
  DynamicsStatus status = DynamicsStatus::BudgetExhausted;
  std::vector<BidProfile> profiles;  // start, then one entry per bid change
  int passes = 0;
};

// Round-robin best responses over grid ∪ {truthful, half-truthful}. An agent
// keeps its current bid when that is already a best response; otherwise it
// moves to the lowest-index maximizer.
DynamicsTrace best_response_dynamics(const BidProfile& types, PaymentRule rule, const BidGrid& grid,
                                     const BidProfile& start, int max_passes);

}  // namespace walras
