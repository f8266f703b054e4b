#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "walras/instance_io.hpp"

namespace walras {

// One checked or recorded quantity of a scripted scenario.
struct Fact {
  std::string name;
  std::string kind;  // "asserted" or "recorded"
  std::string value;
  bool passed = true;
};

struct ReproductionReport {
  std::string scenario;
  Money epsilon;
  std::vector<Fact> facts;

  bool passed() const;
  const Fact* first_failure() const;
  Json to_json() const;
};

// example1 | example2 | overbidding | bullying | payment-ranking
std::vector<std::string> reproduction_scenarios();

// Throws std::invalid_argument for an unknown scenario name.
ReproductionReport reproduce(std::string_view scenario, const Money& epsilon = Money(1, 8));

}  // namespace walras
