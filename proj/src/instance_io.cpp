#include "walras/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace walras {

namespace {

WeightVector weights_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  WeightVector w;
  for (const auto& x : j) w.push_back(money_from_json(x));
  return w;
}

Json weights_to_json(const WeightVector& w) {
  Json a = Json::array();
  for (const auto& x : w) a.push_back(money_to_json(x));
  return a;
}

std::vector<WeightVector> rows_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of arrays");
  std::vector<WeightVector> rows;
  for (const auto& r : j) rows.push_back(weights_from_json(r, what));
  return rows;
}

Json rows_to_json(const std::vector<WeightVector>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(weights_to_json(r));
  return a;
}

}  // namespace

Money money_from_json(const Json& j) {
  try {
    if (j.is_number_integer()) return Money(j.get<long>());
    if (j.is_string()) return Money::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  throw ParseError("numbers must be integers or decimal/fraction strings, got " + j.dump());
}

Json money_to_json(const Money& m) { return m.to_string(); }

Valuation valuation_from_json(const Json& j, std::optional<int> m) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ParseError("valuation must be an object with a string \"type\"");
  const auto type = j["type"].get<std::string>();
  try {
    Valuation v = [&] {
      if (type == "additive") return Valuation::additive(weights_from_json(j.at("weights"), "weights"));
      if (type == "unit_demand") return Valuation::unit_demand(weights_from_json(j.at("weights"), "weights"));
      if (type == "xos") return Valuation::xos(rows_from_json(j.at("clauses"), "clauses"));
      if (type == "oxs") {
        auto rows = rows_from_json(j.at("matrix"), "matrix");
        if (rows.empty() && m) rows.assign(*m, WeightVector());
        return Valuation::oxs(std::move(rows));
      }
      if (type == "tabular") {
        auto values = weights_from_json(j.at("values"), "values");
        int mm = 0;
        while (bundle_count(mm) < values.size() && mm < kMaxItems) ++mm;
        if (m) mm = *m;
        return Valuation::tabular(mm, std::move(values));
      }
      throw ParseError("unknown valuation type '" + type + "'");
    }();
    if (m && v.item_count() != *m)
      throw ParseError("valuation of type '" + type + "' covers " + std::to_string(v.item_count()) +
                       " items, expected " + std::to_string(*m));
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("valuation: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("valuation: ") + e.what());
  }
}

Json valuation_to_json(const Valuation& v) {
  Json j;
  j["type"] = std::string(to_string(v.kind()));
  switch (v.kind()) {
    case ValuationKind::Additive:
    case ValuationKind::UnitDemand: j["weights"] = weights_to_json(v.weights()); break;
    case ValuationKind::Xos: j["clauses"] = rows_to_json(v.clauses()); break;
    case ValuationKind::Oxs: j["matrix"] = rows_to_json(v.matrix()); break;
    case ValuationKind::Tabular: j["values"] = weights_to_json(v.table_values()); break;
  }
  return j;
}

BidProfile InstanceFile::types() const { return BidProfile(m, valuations); }

BidProfile InstanceFile::declared() const {
  std::vector<Valuation> b;
  for (std::size_t i = 0; i < valuations.size(); ++i) b.push_back(bids[i] ? *bids[i] : valuations[i]);
  return BidProfile(m, std::move(b));
}

bool InstanceFile::has_bids() const {
  for (const auto& b : bids)
    if (b) return true;
  return false;
}

InstanceFile instance_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  InstanceFile f;
  if (!j.contains("m") || !j["m"].is_number_integer()) throw ParseError("instance needs an integer \"m\"");
  f.m = j["m"].get<int>();
  if (f.m < 0 || f.m > kMaxItems)
    throw ParseError("m = " + std::to_string(f.m) + " is outside [0, " + std::to_string(kMaxItems) + "]");
  if (j.contains("name")) f.name = j["name"].get<std::string>();
  if (j.contains("epsilon")) f.epsilon = money_from_json(j["epsilon"]);
  if (j.contains("family")) f.family = j["family"].get<std::string>();
  if (!j.contains("players") || !j["players"].is_array() || j["players"].empty())
    throw ParseError("instance needs a non-empty \"players\" array");
  for (const auto& p : j["players"]) {
    if (!p.is_object() || !p.contains("valuation")) throw ParseError("each player needs a \"valuation\"");
    f.valuations.push_back(valuation_from_json(p["valuation"], f.m));
    if (p.contains("bid"))
      f.bids.emplace_back(valuation_from_json(p["bid"], f.m));
    else
      f.bids.emplace_back(std::nullopt);
  }
  return f;
}

Json instance_to_json(const InstanceFile& f) {
  Json j;
  if (!f.name.empty()) j["name"] = f.name;
  j["m"] = f.m;
  if (f.epsilon) j["epsilon"] = money_to_json(*f.epsilon);
  if (f.family) j["family"] = *f.family;
  Json players = Json::array();
  for (std::size_t i = 0; i < f.valuations.size(); ++i) {
    Json p;
    p["valuation"] = valuation_to_json(f.valuations[i]);
    if (f.bids[i]) p["bid"] = valuation_to_json(*f.bids[i]);
    players.push_back(std::move(p));
  }
  j["players"] = std::move(players);
  return j;
}

InstanceFile parse_instance_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

InstanceFile load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance_text(ss.str());
}

Json bundle_to_json(Bundle b) {
  Json a = Json::array();
  for (int j : b.items()) a.push_back(j);
  return a;
}

Json allocation_to_json(const Allocation& a) {
  Json out = Json::array();
  for (const auto& b : a) out.push_back(bundle_to_json(b));
  return out;
}

Json prices_to_json(const PriceVector& p) {
  Json a = Json::array();
  for (const auto& x : p.values()) a.push_back(money_to_json(x));
  return a;
}

Json outcome_to_json(const MechanismOutcome& o) {
  Json j;
  j["rule"] = std::string(to_string(o.rule));
  j["allocation"] = allocation_to_json(o.allocation);
  Json pay = Json::array();
  for (const auto& p : o.payments) pay.push_back(money_to_json(p));
  j["payments"] = std::move(pay);
  if (o.prices_used) j["prices"] = prices_to_json(*o.prices_used);
  return j;
}

Json certificate_to_json(const WalrasianCertificate& c) {
  Json j;
  j["is_equilibrium"] = c.is_equilibrium;
  Json f = Json::array();
  for (const auto& d : c.failures) {
    Json x;
    x["agent"] = d.agent;
    x["assigned"] = bundle_to_json(d.assigned);
    x["preferred"] = bundle_to_json(d.better);
    x["utility_gap"] = money_to_json(d.utility_gap);
    f.push_back(std::move(x));
  }
  j["failures"] = std::move(f);
  return j;
}

Json nash_report_to_json(const NashReport& r) {
  Json j;
  j["is_grid_nash"] = r.is_nash;
  j["eps_dev"] = money_to_json(r.eps_dev);
  j["outcome"] = outcome_to_json(r.outcome);
  Json agents = Json::array();
  for (std::size_t i = 0; i < r.utilities.size(); ++i) {
    Json a;
    a["utility"] = money_to_json(r.utilities[i]);
    const auto& d = r.best_deviation[i];
    a["best_deviation"] = {{"source", std::string(to_string(d.source))},
                           {"bid", valuation_to_json(d.bid->valuation)},
                           {"utility", money_to_json(d.utility)},
                           {"gain", money_to_json(d.gain)}};
    agents.push_back(std::move(a));
  }
  j["agents"] = std::move(agents);
  j["welfare"] = money_to_json(r.welfare);
  j["optimal_welfare"] = money_to_json(r.optimal_welfare);
  j["ratio"] = r.ratio.to_string();
  return j;
}

Json poa_report_to_json(const PoaReport& r) {
  Json j;
  j["rule"] = std::string(to_string(r.rule));
  j["gamma"] = money_to_json(r.gamma);
  j["worst_ratio"] = r.worst_ratio.to_string();
  j["equilibria"] = r.equilibria;
  j["profiles_examined"] = r.profiles_examined;
  j["optimal_welfare"] = money_to_json(r.optimal_welfare);
  if (r.witness) {
    Json w = Json::array();
    for (int i = 0; i < r.witness->agent_count(); ++i) w.push_back(valuation_to_json(r.witness->bid(i)));
    j["witness"] = std::move(w);
    j["witness_welfare"] = money_to_json(r.witness_welfare);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

}  // namespace walras
