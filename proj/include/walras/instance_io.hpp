#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "walras/analysis.hpp"
#include "walras/mechanisms.hpp"
#include "walras/valuation.hpp"
#include "walras/walrasian.hpp"
#include "walras/welfare.hpp"

namespace walras {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"m": 2, "name": "...", "epsilon": "1/8", "family": "example1",
//  "players": [{"valuation": {...}, "bid": {...}}, ...]}
// "bid" is optional per player; a missing bid means truthful.
struct InstanceFile {
  std::string name;
  int m = 0;
  std::vector<Valuation> valuations;
  std::vector<std::optional<Valuation>> bids;
  std::optional<Money> epsilon;
  std::optional<std::string> family;

  BidProfile types() const;
  // Declared bids, truthful where a player has none.
  BidProfile declared() const;
  bool has_bids() const;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

Money money_from_json(const Json& j);
Json money_to_json(const Money& m);

Valuation valuation_from_json(const Json& j, std::optional<int> m = std::nullopt);
Json valuation_to_json(const Valuation& v);

InstanceFile instance_from_json(const Json& j);
Json instance_to_json(const InstanceFile& f);

InstanceFile load_instance(const std::filesystem::path& path);
InstanceFile parse_instance_text(const std::string& text);

Json bundle_to_json(Bundle b);
Json allocation_to_json(const Allocation& a);
Json prices_to_json(const PriceVector& p);
Json outcome_to_json(const MechanismOutcome& o);
Json certificate_to_json(const WalrasianCertificate& c);
Json nash_report_to_json(const NashReport& r);
Json poa_report_to_json(const PoaReport& r);

}  // namespace walras
