#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "walras/bundle.hpp"
#include "walras/money.hpp"

namespace walras {

using WeightVector = std::vector<Money>;

// Item prices; one entry per item, all non-negative.
class PriceVector {
 public:
  PriceVector() = default;
  explicit PriceVector(std::vector<Money> prices);
  static PriceVector zero(int m) { return PriceVector(std::vector<Money>(m)); }

  int item_count() const { return static_cast<int>(prices_.size()); }
  const Money& operator[](int j) const { return prices_.at(j); }
  const std::vector<Money>& values() const { return prices_; }
  void set(int j, Money p);

  // p · 𝟙_S
  Money cost(Bundle s) const;
  // Componentwise p <= q.
  bool leq(const PriceVector& q) const;

  friend bool operator==(const PriceVector&, const PriceVector&) = default;
  std::string to_string() const;

 private:
  std::vector<Money> prices_;
};

// Full table of a set function: values[x.bits()] = f(x) for all 2^m bundles.
struct ValueTable {
  int m = 0;
  std::vector<Money> values;

  const Money& operator[](Bundle b) const { return values[b.bits()]; }
};

enum class ValuationKind { Additive, UnitDemand, Xos, Oxs, Tabular };

std::string_view to_string(ValuationKind k);

// A monotone, normalized set function in one of five concrete encodings.
// Immutable after construction.
class Valuation {
 public:
  struct Additive { WeightVector weights; };
  struct UnitDemand { WeightVector weights; };
  // max over clauses of clause · 𝟙_S
  struct Xos { std::vector<WeightVector> clauses; };
  // matrix[item][slot]; value = max-weight matching of bundle items to slots.
  struct Oxs { std::vector<WeightVector> matrix; };
  struct Tabular { std::vector<Money> values; };

  static Valuation additive(WeightVector weights);
  static Valuation unit_demand(WeightVector weights);
  static Valuation xos(std::vector<WeightVector> clauses);
  // An Oxs valuation over m items with k slots; matrix is m rows of k entries.
  static Valuation oxs(std::vector<WeightVector> matrix);
  // Rejects tables that are not normalized and monotone.
  static Valuation tabular(int m, std::vector<Money> values);
  static Valuation zero(int m) { return additive(WeightVector(m)); }

  ValuationKind kind() const;
  int item_count() const { return m_; }

  Money evaluate(Bundle x) const;
  // Clamps to x ∩ 𝟙 first.
  Money evaluate(const ItemMultiset& x) const { return evaluate(x.support()); }

  ValueTable tabulate() const;
  Valuation scaled(const Money& factor) const;

  // Accessors; throw std::logic_error on the wrong kind.
  const WeightVector& weights() const;
  const std::vector<WeightVector>& clauses() const;
  const std::vector<WeightVector>& matrix() const;
  const std::vector<Money>& table_values() const;

  const std::variant<Additive, UnitDemand, Xos, Oxs, Tabular>& repr() const { return repr_; }

  friend bool operator==(const Valuation& a, const Valuation& b);

  std::string describe() const;

 private:
  Valuation(int m, std::variant<Additive, UnitDemand, Xos, Oxs, Tabular> r) : m_(m), repr_(std::move(r)) {}

  int m_ = 0;
  std::variant<Additive, UnitDemand, Xos, Oxs, Tabular> repr_;
};

bool operator==(const Valuation::Additive& a, const Valuation::Additive& b);
bool operator==(const Valuation::UnitDemand& a, const Valuation::UnitDemand& b);
bool operator==(const Valuation::Xos& a, const Valuation::Xos& b);
bool operator==(const Valuation::Oxs& a, const Valuation::Oxs& b);
bool operator==(const Valuation::Tabular& a, const Valuation::Tabular& b);

// f(y + x) - f(x) for an arbitrary value oracle over item multisets.
using MultisetOracle = std::function<Money(const ItemMultiset&)>;
Money marginal_value(const MultisetOracle& f, const ItemMultiset& y, const ItemMultiset& x);
Money marginal_value(const Valuation& v, const ItemMultiset& y, const ItemMultiset& x);

// Every bundle maximizing v(x) - p·x, ascending by bitmask. Never empty.
std::vector<Bundle> demand_set(const Valuation& v, const PriceVector& p);
std::vector<Bundle> demand_set(const ValueTable& v, const PriceVector& p);

// Class checkers. All are exponential in m and intended for m <= 6.
bool is_monotone_normalized(const ValueTable& v);
// Throws std::invalid_argument if v is not monotone and normalized.
bool is_submodular(const ValueTable& v);
// Single-exchange (M-natural concavity) characterization of gross substitutes.
// Throws std::invalid_argument if v is not monotone and normalized.
bool is_gross_substitutes(const ValueTable& v);

// A clause w of an Xos valuation with w·𝟙_S = v(S); lowest index on ties.
const WeightVector& xos_supporting_clause(const Valuation& v, Bundle s);

enum class ValuationClass { Additive, UnitDemand, Oxs, Xos };

std::string_view to_string(ValuationClass c);
ValuationClass parse_valuation_class(std::string_view name);

struct SampleOptions {
  // Weights are multiples of 1/denominator in [0, cap].
  long denominator = 4;
  int max_clauses = 3;
  int max_slots = 0;  // 0: up to m slots
};

// Deterministic for a given (class, m, cap, seed, options).
Valuation sample_valuation(ValuationClass cls, int m, const Money& cap, std::uint64_t seed,
                           const SampleOptions& options = {});

}  // namespace walras
