#include "walras/bundle.hpp"

#include <algorithm>

namespace walras {

std::string Bundle::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int j : items()) {
    if (!first) s += ",";
    s += std::to_string(j);
    first = false;
  }
  return s + "}";
}

ItemMultiset::ItemMultiset(std::vector<int> counts) : counts_(std::move(counts)) {
  check_item_count(item_count());
  for (int c : counts_)
    if (c < 0) throw std::invalid_argument("ItemMultiset: negative multiplicity");
}

ItemMultiset ItemMultiset::from_bundle(Bundle b, int m) {
  std::vector<int> c(m, 0);
  for (int j = 0; j < m; ++j) c[j] = b.contains(j) ? 1 : 0;
  return ItemMultiset(std::move(c));
}

int ItemMultiset::max_multiplicity() const {
  return counts_.empty() ? 0 : *std::max_element(counts_.begin(), counts_.end());
}

Bundle ItemMultiset::support() const {
  Bundle b;
  for (int j = 0; j < item_count(); ++j)
    if (counts_[j] >= 1) b = b.with(j);
  return b;
}

Bundle ItemMultiset::doubled() const {
  Bundle b;
  for (int j = 0; j < item_count(); ++j)
    if (counts_[j] >= 2) b = b.with(j);
  return b;
}

ItemMultiset ItemMultiset::plus(const ItemMultiset& o) const {
  if (o.item_count() != item_count()) throw std::invalid_argument("ItemMultiset: size mismatch");
  std::vector<int> c = counts_;
  for (int j = 0; j < item_count(); ++j) c[j] += o.counts_[j];
  return ItemMultiset(std::move(c));
}

ItemMultiset ItemMultiset::minus(const ItemMultiset& o) const {
  if (o.item_count() != item_count()) throw std::invalid_argument("ItemMultiset: size mismatch");
  std::vector<int> c = counts_;
  for (int j = 0; j < item_count(); ++j) c[j] -= o.counts_[j];
  return ItemMultiset(std::move(c));
}

ItemMultiset ItemMultiset::plus_item(int item) const {
  std::vector<int> c = counts_;
  ++c.at(item);
  return ItemMultiset(std::move(c));
}

ItemMultiset ItemMultiset::minus_item(int item) const {
  std::vector<int> c = counts_;
  --c.at(item);
  return ItemMultiset(std::move(c));
}

bool ItemMultiset::leq(const ItemMultiset& o) const {
  if (o.item_count() != item_count()) return false;
  for (int j = 0; j < item_count(); ++j)
    if (counts_[j] > o.counts_[j]) return false;
  return true;
}

std::string ItemMultiset::to_string() const {
  std::string s = "(";
  for (int j = 0; j < item_count(); ++j) {
    if (j) s += ",";
    s += std::to_string(counts_[j]);
  }
  return s + ")";
}

}  // namespace walras
