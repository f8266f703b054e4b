#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace walras {

inline constexpr int kMaxItems = 16;

// A set of items as a bitmask; item j is bit j. Item indices are 0-based.
class Bundle {
 public:
  constexpr Bundle() = default;
  constexpr explicit Bundle(std::uint32_t bits) : bits_(bits) {}

  static constexpr Bundle empty() { return Bundle(); }
  static constexpr Bundle full(int m) { return Bundle((std::uint32_t{1} << m) - 1); }
  static constexpr Bundle single(int item) { return Bundle(std::uint32_t{1} << item); }
  static Bundle of(std::initializer_list<int> items) {
    Bundle b;
    for (int j : items) b = b.with(j);
    return b;
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool contains(int item) const { return (bits_ >> item) & 1u; }
  constexpr bool is_empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool subset_of(Bundle o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool fits(int m) const { return (bits_ >> m) == 0; }

  constexpr Bundle with(int item) const { return Bundle(bits_ | (std::uint32_t{1} << item)); }
  constexpr Bundle without(int item) const { return Bundle(bits_ & ~(std::uint32_t{1} << item)); }

  friend constexpr Bundle operator|(Bundle a, Bundle b) { return Bundle(a.bits_ | b.bits_); }
  friend constexpr Bundle operator&(Bundle a, Bundle b) { return Bundle(a.bits_ & b.bits_); }
  friend constexpr Bundle operator-(Bundle a, Bundle b) { return Bundle(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(Bundle a, Bundle b) = default;
  friend constexpr auto operator<=>(Bundle a, Bundle b) = default;

  std::vector<int> items() const {
    std::vector<int> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  // "{0,2}" style.
  std::string to_string() const;

 private:
  std::uint32_t bits_ = 0;
};

// Number of bundles over m items.
constexpr std::size_t bundle_count(int m) { return std::size_t{1} << m; }

inline void check_item_count(int m) {
  if (m < 0 || m > kMaxItems)
    throw std::invalid_argument("item count must be in [0, " + std::to_string(kMaxItems) + "], got " +
                                std::to_string(m));
}

// Per-item multiplicities; the argument of the extended welfare function.
class ItemMultiset {
 public:
  ItemMultiset() = default;
  explicit ItemMultiset(std::vector<int> counts);

  static ItemMultiset zero(int m) { return ItemMultiset(std::vector<int>(m, 0)); }
  static ItemMultiset ones(int m) { return ItemMultiset(std::vector<int>(m, 1)); }
  static ItemMultiset from_bundle(Bundle b, int m);

  int item_count() const { return static_cast<int>(counts_.size()); }
  int count(int item) const { return counts_.at(item); }
  const std::vector<int>& counts() const { return counts_; }
  int max_multiplicity() const;

  // x ∩ 𝟙: items present at least once.
  Bundle support() const;
  // Items present at least twice.
  Bundle doubled() const;

  ItemMultiset plus(const ItemMultiset& o) const;
  // Componentwise difference; throws if any entry would go negative.
  ItemMultiset minus(const ItemMultiset& o) const;
  ItemMultiset plus_item(int item) const;
  ItemMultiset minus_item(int item) const;
  bool leq(const ItemMultiset& o) const;

  friend bool operator==(const ItemMultiset&, const ItemMultiset&) = default;

  std::string to_string() const;

 private:
  std::vector<int> counts_;
};

}  // namespace walras
