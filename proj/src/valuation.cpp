#include "walras/valuation.hpp"

#include <algorithm>
#include <sstream>

#include "walras/rng.hpp"

namespace walras {

namespace {

void require_non_negative(const WeightVector& w, const char* what) {
  for (const auto& x : w)
    if (x.is_negative()) throw std::invalid_argument(std::string(what) + ": negative weight");
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Money dot(const WeightVector& w, Bundle x) {
  Money s;
  for (int j : x.items()) s += w[j];
  return s;
}

// Max-weight matching of the items of x to slots, DP over used-slot masks.
Money oxs_value(const std::vector<WeightVector>& matrix, Bundle x) {
  if (matrix.empty() || x.is_empty()) return Money();
  const int slots = static_cast<int>(matrix.front().size());
  if (slots == 0) return Money();
  const std::size_t states = std::size_t{1} << slots;
  std::vector<Money> best(states);
  std::vector<bool> reachable(states, false);
  reachable[0] = true;
  for (int item : x.items()) {
    std::vector<Money> next = best;
    std::vector<bool> next_reach = reachable;
    for (std::size_t mask = 0; mask < states; ++mask) {
      if (!reachable[mask]) continue;
      for (int s = 0; s < slots; ++s) {
        if (mask & (std::size_t{1} << s)) continue;
        const std::size_t to = mask | (std::size_t{1} << s);
        Money cand = best[mask] + matrix[item][s];
        if (!next_reach[to] || next[to] < cand) {
          next[to] = std::move(cand);
          next_reach[to] = true;
        }
      }
    }
    best = std::move(next);
    reachable = std::move(next_reach);
  }
  Money out;
  for (std::size_t mask = 0; mask < states; ++mask)
    if (reachable[mask] && out < best[mask]) out = best[mask];
  return out;
}

}  // namespace

PriceVector::PriceVector(std::vector<Money> prices) : prices_(std::move(prices)) {
  check_item_count(item_count());
  for (const auto& p : prices_)
    if (p.is_negative()) throw std::invalid_argument("PriceVector: negative price");
}

void PriceVector::set(int j, Money p) {
  if (p.is_negative()) throw std::invalid_argument("PriceVector: negative price");
  prices_.at(j) = std::move(p);
}

Money PriceVector::cost(Bundle s) const {
  Money c;
  for (int j : s.items()) c += prices_.at(j);
  return c;
}

bool PriceVector::leq(const PriceVector& q) const {
  if (q.item_count() != item_count()) return false;
  for (int j = 0; j < item_count(); ++j)
    if (q.prices_[j] < prices_[j]) return false;
  return true;
}

std::string PriceVector::to_string() const {
  std::string s = "(";
  for (int j = 0; j < item_count(); ++j) {
    if (j) s += ",";
    s += prices_[j].to_string();
  }
  return s + ")";
}

std::string_view to_string(ValuationKind k) {
  switch (k) {
    case ValuationKind::Additive: return "additive";
    case ValuationKind::UnitDemand: return "unit_demand";
    case ValuationKind::Xos: return "xos";
    case ValuationKind::Oxs: return "oxs";
    case ValuationKind::Tabular: return "tabular";
  }
  return "?";
}

Valuation Valuation::additive(WeightVector weights) {
  require_non_negative(weights, "additive");
  int m = static_cast<int>(weights.size());
  check_item_count(m);
  return Valuation(m, Additive{std::move(weights)});
}

Valuation Valuation::unit_demand(WeightVector weights) {
  require_non_negative(weights, "unit_demand");
  int m = static_cast<int>(weights.size());
  check_item_count(m);
  return Valuation(m, UnitDemand{std::move(weights)});
}

Valuation Valuation::xos(std::vector<WeightVector> clauses) {
  if (clauses.empty()) throw std::invalid_argument("xos: at least one clause required");
  int m = static_cast<int>(clauses.front().size());
  check_item_count(m);
  for (const auto& c : clauses) {
    if (static_cast<int>(c.size()) != m) throw std::invalid_argument("xos: clauses differ in length");
    require_non_negative(c, "xos");
  }
  return Valuation(m, Xos{std::move(clauses)});
}

Valuation Valuation::oxs(std::vector<WeightVector> matrix) {
  int m = static_cast<int>(matrix.size());
  check_item_count(m);
  std::size_t slots = matrix.empty() ? 0 : matrix.front().size();
  if (slots > static_cast<std::size_t>(kMaxItems)) throw std::invalid_argument("oxs: too many slots");
  for (const auto& row : matrix) {
    if (row.size() != slots) throw std::invalid_argument("oxs: ragged matrix");
    require_non_negative(row, "oxs");
  }
  return Valuation(m, Oxs{std::move(matrix)});
}

Valuation Valuation::tabular(int m, std::vector<Money> values) {
  check_item_count(m);
  if (values.size() != bundle_count(m))
    throw std::invalid_argument("tabular: expected " + std::to_string(bundle_count(m)) + " values, got " +
                                std::to_string(values.size()));
  ValueTable t{m, values};
  if (!is_monotone_normalized(t)) throw std::invalid_argument("tabular: table is not monotone and normalized");
  return Valuation(m, Tabular{std::move(values)});
}

ValuationKind Valuation::kind() const { return static_cast<ValuationKind>(repr_.index()); }

Money Valuation::evaluate(Bundle x) const {
  if (!x.fits(m_)) throw std::invalid_argument("evaluate: bundle " + x.to_string() + " exceeds item count");
  return std::visit(Overloaded{
                        [&](const Additive& a) { return dot(a.weights, x); },
                        [&](const UnitDemand& u) {
                          Money best;
                          for (int j : x.items()) best = max(best, u.weights[j]);
                          return best;
                        },
                        [&](const Xos& c) {
                          Money best;
                          for (const auto& w : c.clauses) best = max(best, dot(w, x));
                          return best;
                        },
                        [&](const Oxs& o) { return oxs_value(o.matrix, x); },
                        [&](const Tabular& t) { return t.values[x.bits()]; },
                    },
                    repr_);
}

ValueTable Valuation::tabulate() const {
  ValueTable t{m_, std::vector<Money>(bundle_count(m_))};
  if (const auto* tab = std::get_if<Tabular>(&repr_)) {
    t.values = tab->values;
    return t;
  }
  for (std::size_t b = 0; b < t.values.size(); ++b) t.values[b] = evaluate(Bundle(static_cast<std::uint32_t>(b)));
  return t;
}

Valuation Valuation::scaled(const Money& factor) const {
  if (factor.is_negative()) throw std::invalid_argument("scaled: negative factor");
  auto scale = [&](WeightVector w) {
    for (auto& x : w) x *= factor;
    return w;
  };
  return std::visit(Overloaded{
                        [&](const Additive& a) { return additive(scale(a.weights)); },
                        [&](const UnitDemand& u) { return unit_demand(scale(u.weights)); },
                        [&](const Xos& c) {
                          std::vector<WeightVector> cl;
                          for (const auto& w : c.clauses) cl.push_back(scale(w));
                          return xos(std::move(cl));
                        },
                        [&](const Oxs& o) {
                          std::vector<WeightVector> mat;
                          for (const auto& row : o.matrix) mat.push_back(scale(row));
                          return oxs(std::move(mat));
                        },
                        [&](const Tabular& t) { return tabular(m_, scale(t.values)); },
                    },
                    repr_);
}

const WeightVector& Valuation::weights() const {
  if (const auto* a = std::get_if<Additive>(&repr_)) return a->weights;
  if (const auto* u = std::get_if<UnitDemand>(&repr_)) return u->weights;
  throw std::logic_error("weights(): valuation is " + std::string(to_string(kind())));
}

const std::vector<WeightVector>& Valuation::clauses() const {
  if (const auto* c = std::get_if<Xos>(&repr_)) return c->clauses;
  throw std::logic_error("clauses(): valuation is " + std::string(to_string(kind())));
}

const std::vector<WeightVector>& Valuation::matrix() const {
  if (const auto* o = std::get_if<Oxs>(&repr_)) return o->matrix;
  throw std::logic_error("matrix(): valuation is " + std::string(to_string(kind())));
}

const std::vector<Money>& Valuation::table_values() const {
  if (const auto* t = std::get_if<Tabular>(&repr_)) return t->values;
  throw std::logic_error("table_values(): valuation is " + std::string(to_string(kind())));
}

bool operator==(const Valuation::Additive& a, const Valuation::Additive& b) { return a.weights == b.weights; }
bool operator==(const Valuation::UnitDemand& a, const Valuation::UnitDemand& b) { return a.weights == b.weights; }
bool operator==(const Valuation::Xos& a, const Valuation::Xos& b) { return a.clauses == b.clauses; }
bool operator==(const Valuation::Oxs& a, const Valuation::Oxs& b) { return a.matrix == b.matrix; }
bool operator==(const Valuation::Tabular& a, const Valuation::Tabular& b) { return a.values == b.values; }

bool operator==(const Valuation& a, const Valuation& b) { return a.m_ == b.m_ && a.repr_ == b.repr_; }

std::string Valuation::describe() const {
  std::ostringstream os;
  auto vec = [&](const WeightVector& w) {
    os << "(";
    for (std::size_t j = 0; j < w.size(); ++j) os << (j ? "," : "") << w[j];
    os << ")";
  };
  os << to_string(kind());
  std::visit(Overloaded{
                 [&](const Additive& a) { vec(a.weights); },
                 [&](const UnitDemand& u) { vec(u.weights); },
                 [&](const Xos& c) {
                   os << "[";
                   for (const auto& w : c.clauses) vec(w);
                   os << "]";
                 },
                 [&](const Oxs& o) {
                   os << "[";
                   for (const auto& row : o.matrix) vec(row);
                   os << "]";
                 },
                 [&](const Tabular& t) { vec(t.values); },
             },
             repr_);
  return os.str();
}

Money marginal_value(const MultisetOracle& f, const ItemMultiset& y, const ItemMultiset& x) {
  return f(y.plus(x)) - f(x);
}

Money marginal_value(const Valuation& v, const ItemMultiset& y, const ItemMultiset& x) {
  return v.evaluate(y.plus(x)) - v.evaluate(x);
}

std::vector<Bundle> demand_set(const ValueTable& v, const PriceVector& p) {
  if (p.item_count() != v.m) throw std::invalid_argument("demand_set: price vector length mismatch");
  std::vector<Bundle> out;
  Money best;
  for (std::size_t b = 0; b < v.values.size(); ++b) {
    Bundle x(static_cast<std::uint32_t>(b));
    Money u = v.values[b] - p.cost(x);
    if (out.empty() || best < u) {
      best = u;
      out.assign(1, x);
    } else if (u == best) {
      out.push_back(x);
    }
  }
  return out;
}

std::vector<Bundle> demand_set(const Valuation& v, const PriceVector& p) { return demand_set(v.tabulate(), p); }

bool is_monotone_normalized(const ValueTable& v) {
  if (v.values.size() != bundle_count(v.m)) return false;
  if (!v.values[0].is_zero()) return false;
  // Checking single-item additions suffices for monotonicity over all x ⊆ y.
  for (std::size_t b = 0; b < v.values.size(); ++b)
    for (int j = 0; j < v.m; ++j)
      if (!(b & (std::size_t{1} << j)) && v.values[b | (std::size_t{1} << j)] < v.values[b]) return false;
  return true;
}

bool is_submodular(const ValueTable& v) {
  if (!is_monotone_normalized(v)) throw std::invalid_argument("is_submodular: table not monotone/normalized");
  for (std::size_t x = 0; x < v.values.size(); ++x) {
    for (int i = 0; i < v.m; ++i) {
      const std::size_t bi = std::size_t{1} << i;
      if (x & bi) continue;
      for (int j = i + 1; j < v.m; ++j) {
        const std::size_t bj = std::size_t{1} << j;
        if (x & bj) continue;
        if (v.values[x | bi] + v.values[x | bj] < v.values[x | bi | bj] + v.values[x]) return false;
      }
    }
  }
  return true;
}

bool is_gross_substitutes(const ValueTable& v) {
  if (!is_monotone_normalized(v)) throw std::invalid_argument("is_gross_substitutes: table not monotone/normalized");
  const std::size_t n = v.values.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Money lhs = v.values[x] + v.values[y];
      for (std::size_t xi = x & ~y; xi != 0; xi &= xi - 1) {
        const std::size_t bi = xi & (~xi + 1);
        Money best = v.values[x & ~bi] + v.values[y | bi];
        if (!(best < lhs)) continue;
        bool ok = false;
        for (std::size_t yj = y & ~x; yj != 0; yj &= yj - 1) {
          const std::size_t bj = yj & (~yj + 1);
          if (!(v.values[(x & ~bi) | bj] + v.values[(y | bi) & ~bj] < lhs)) {
            ok = true;
            break;
          }
        }
        if (!ok) return false;
      }
    }
  }
  return true;
}

const WeightVector& xos_supporting_clause(const Valuation& v, Bundle s) {
  const auto& clauses = v.clauses();
  std::size_t best = 0;
  Money best_value = dot(clauses[0], s);
  for (std::size_t c = 1; c < clauses.size(); ++c) {
    Money val = dot(clauses[c], s);
    if (best_value < val) {
      best_value = std::move(val);
      best = c;
    }
  }
  return clauses[best];
}

std::string_view to_string(ValuationClass c) {
  switch (c) {
    case ValuationClass::Additive: return "add";
    case ValuationClass::UnitDemand: return "ud";
    case ValuationClass::Oxs: return "oxs";
    case ValuationClass::Xos: return "xos";
  }
  return "?";
}

ValuationClass parse_valuation_class(std::string_view name) {
  if (name == "add" || name == "additive") return ValuationClass::Additive;
  if (name == "ud" || name == "unit_demand") return ValuationClass::UnitDemand;
  if (name == "oxs") return ValuationClass::Oxs;
  if (name == "xos") return ValuationClass::Xos;
  throw std::invalid_argument("unknown valuation class '" + std::string(name) + "'");
}

Valuation sample_valuation(ValuationClass cls, int m, const Money& cap, std::uint64_t seed,
                           const SampleOptions& options) {
  check_item_count(m);
  if (options.denominator <= 0) throw std::invalid_argument("sample_valuation: denominator must be positive");
  if (cap.is_negative()) throw std::invalid_argument("sample_valuation: negative cap");
  Rng rng(mix_seed(seed, static_cast<std::uint64_t>(cls) * 131 + static_cast<std::uint64_t>(m)));
  const Money scaled_cap = cap * Money(options.denominator);
  // floor(cap * den) as a long
  const long top = mpz_class(scaled_cap.numerator() / scaled_cap.denominator()).get_si();
  auto draw = [&](bool allow_zero) {
    long lo = allow_zero || top == 0 ? 0 : 1;
    return Money(rng.uniform(lo, top), options.denominator);
  };
  auto vector_of = [&](int len, bool sparse) {
    WeightVector w(len);
    for (auto& x : w) x = (sparse && rng.chance(1, 3)) ? Money() : draw(true);
    return w;
  };

  switch (cls) {
    case ValuationClass::Additive: return Valuation::additive(vector_of(m, false));
    case ValuationClass::UnitDemand: return Valuation::unit_demand(vector_of(m, false));
    case ValuationClass::Xos: {
      int count = static_cast<int>(rng.uniform(1, std::max(1, options.max_clauses)));
      std::vector<WeightVector> clauses;
      for (int c = 0; c < count; ++c) clauses.push_back(vector_of(m, true));
      return Valuation::xos(std::move(clauses));
    }
    case ValuationClass::Oxs: {
      int slot_cap = options.max_slots > 0 ? options.max_slots : std::max(1, m);
      int slots = static_cast<int>(rng.uniform(1, slot_cap));
      std::vector<WeightVector> matrix;
      for (int j = 0; j < m; ++j) matrix.push_back(vector_of(slots, true));
      return Valuation::oxs(std::move(matrix));
    }
  }
  throw std::invalid_argument("sample_valuation: unknown class");
}

}  // namespace walras
