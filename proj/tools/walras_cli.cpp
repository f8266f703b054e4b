#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>

#include "walras/analysis.hpp"
#include "walras/fixtures.hpp"
#include "walras/instance_io.hpp"
#include "walras/property_suites.hpp"
#include "walras/reproduce.hpp"
#include "walras/walrasian.hpp"

using namespace walras;

namespace {

enum class Exit { Ok = 0, Failure = 1, Usage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string instance;
  std::string rule = "english";
  std::string gamma = "0";
  std::string grid_delta;
  std::string grid_cap;
  std::string eps_dev = "0";
  std::string epsilon = "1/8";
  std::string suite = "all";
  std::string scenario;
  std::uint64_t seed = 0;
  int seeds = 100;
  int jobs = 1;
  std::string format = "json";
};

Money money_option(const std::string& text, const char* flag) {
  try {
    return Money::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

PaymentRule rule_option(const Options& o) {
  try {
    return parse_payment_rule(o.rule);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--rule: ") + e.what());
  }
}

BidGrid grid_option(const Options& o, const BidProfile& types) {
  const Money delta = o.grid_delta.empty() ? default_grid_delta(types) : money_option(o.grid_delta, "--grid-delta");
  const Money cap = o.grid_cap.empty() ? default_grid_cap(types) : money_option(o.grid_cap, "--grid-cap");
  if (!delta.is_positive()) throw UsageError("--grid-delta must be positive");
  if (cap.is_negative()) throw UsageError("--grid-cap must be non-negative");
  try {
    return additive_grid(types.agent_count(), types.item_count(), delta, cap);
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }
}

std::string instance_id(const InstanceFile& f, const Options& o) { return f.name.empty() ? o.instance : f.name; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void csv_row(std::ostream& out, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const auto& f : fields) {
    out << (first ? "" : ",") << csv_field(f);
    first = false;
  }
  out << '\n';
}

std::string bundle_text(Bundle b) { return b.to_string(); }

Exit cmd_solve(const Options& o, std::ostream& out) {
  const InstanceFile f = load_instance(o.instance);
  const BidProfile p = f.declared();
  const Allocation alloc = optimal_allocation(p);
  const Money w = allocation_value(p, alloc);
  if (o.format == "csv") {
    csv_row(out, {"agent", "bundle", "value"});
    for (int i = 0; i < p.agent_count(); ++i)
      csv_row(out, {std::to_string(i), bundle_text(alloc[i]), p.bid(i).evaluate(alloc[i]).to_string()});
    return Exit::Ok;
  }
  Json j;
  j["instance"] = instance_id(f, o);
  j["welfare"] = money_to_json(w);
  j["allocation"] = allocation_to_json(alloc);
  out << j.dump(2) << '\n';
  return Exit::Ok;
}

Exit cmd_prices(const Options& o, std::ostream& out) {
  const InstanceFile f = load_instance(o.instance);
  const BidProfile p = f.declared();
  const PriceVector lo = min_walrasian_prices(p);
  const PriceVector hi = max_walrasian_prices(p);
  const Allocation alloc = optimal_allocation(p);
  const auto lo_cert = verify_walrasian_equilibrium(p, alloc, lo);
  const auto hi_cert = verify_walrasian_equilibrium(p, alloc, hi);
  if (o.format == "csv") {
    csv_row(out, {"item", "min_price", "max_price"});
    for (int j = 0; j < p.item_count(); ++j) csv_row(out, {std::to_string(j), lo[j].to_string(), hi[j].to_string()});
    return Exit::Ok;
  }
  Json j;
  j["instance"] = instance_id(f, o);
  j["allocation"] = allocation_to_json(alloc);
  j["min_prices"] = prices_to_json(lo);
  j["max_prices"] = prices_to_json(hi);
  j["min_prices_certificate"] = certificate_to_json(lo_cert);
  j["max_prices_certificate"] = certificate_to_json(hi_cert);
  out << j.dump(2) << '\n';
  return Exit::Ok;
}

Exit cmd_mechanism(const Options& o, std::ostream& out) {
  const InstanceFile f = load_instance(o.instance);
  const BidProfile types = f.types();
  const auto outcome = run_mechanism(rule_option(o), f.declared());
  if (o.format == "csv") {
    csv_row(out, {"agent", "bundle", "payment", "utility"});
    for (int i = 0; i < types.agent_count(); ++i)
      csv_row(out, {std::to_string(i), bundle_text(outcome.allocation[i]), outcome.payments[i].to_string(),
                    utility(types.bid(i), outcome, i).to_string()});
    return Exit::Ok;
  }
  Json j = outcome_to_json(outcome);
  Json u = Json::array();
  for (int i = 0; i < types.agent_count(); ++i) u.push_back(money_to_json(utility(types.bid(i), outcome, i)));
  j["utilities"] = std::move(u);
  j["welfare"] = money_to_json(allocation_value(types, outcome.allocation));
  out << j.dump(2) << '\n';
  return Exit::Ok;
}

Exit cmd_verify_nash(const Options& o, std::ostream& out) {
  const InstanceFile f = load_instance(o.instance);
  const BidProfile types = f.types();
  const auto report = verify_nash(types, rule_option(o), f.declared(), grid_option(o, types),
                                  money_option(o.eps_dev, "--eps-dev"));
  if (o.format == "csv") {
    csv_row(out, {"instance", "rule", "grid_nash", "welfare", "optimal_welfare", "ratio"});
    csv_row(out, {instance_id(f, o), o.rule, report.is_nash ? "true" : "false", report.welfare.to_string(),
                  report.optimal_welfare.to_string(), report.ratio.to_string()});
    return Exit::Ok;
  }
  Json j = nash_report_to_json(report);
  j["instance"] = instance_id(f, o);
  out << j.dump(2) << '\n';
  return Exit::Ok;
}

Exit cmd_poa(const Options& o, std::ostream& out) {
  const InstanceFile f = load_instance(o.instance);
  const BidProfile types = f.types();
  const Money gamma = money_option(o.gamma, "--gamma");
  if (gamma.is_negative()) throw UsageError("--gamma must be non-negative");
  if (o.jobs < 1) throw UsageError("--jobs must be at least 1");
  PoaOptions opts;
  opts.eps_dev = money_option(o.eps_dev, "--eps-dev");
  opts.jobs = o.jobs;
  PoaReport report;
  try {
    report = poa_search(types, rule_option(o), grid_option(o, types), gamma, opts);
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }
  if (o.format == "csv") {
    std::string witness;
    if (report.witness)
      for (int i = 0; i < report.witness->agent_count(); ++i)
        witness += (i ? " | " : "") + report.witness->bid(i).describe();
    csv_row(out, {"instance", "rule", "gamma", "ratio", "witness"});
    csv_row(out, {instance_id(f, o), o.rule, gamma.to_string(), report.worst_ratio.to_string(), witness});
    return Exit::Ok;
  }
  Json j = poa_report_to_json(report);
  j["instance"] = instance_id(f, o);
  out << j.dump(2) << '\n';
  return Exit::Ok;
}

Exit cmd_property_test(const Options& o, std::ostream& out) {
  PropertyReport report;
  try {
    report = run_property_suite(o.suite, o.seeds, o.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (o.format == "csv") {
    csv_row(out, {"suite", "check", "trials", "failures"});
    for (const auto& c : report.checks)
      csv_row(out, {report.suite, c.name, std::to_string(c.trials), std::to_string(c.failures)});
  } else {
    out << report.to_json().dump(2) << '\n';
  }
  return report.passed() ? Exit::Ok : Exit::Failure;
}

Exit cmd_reproduce(const Options& o, std::ostream& out) {
  const Money eps = money_option(o.epsilon, "--epsilon");
  ReproductionReport report;
  try {
    report = reproduce(o.scenario, eps);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (o.format == "csv") {
    csv_row(out, {"scenario", "fact", "kind", "value", "passed"});
    for (const auto& f : report.facts)
      csv_row(out, {report.scenario, f.name, f.kind, f.value, f.passed ? "true" : "false"});
  } else {
    out << report.to_json().dump(2) << '\n';
  }
  if (const Fact* bad = report.first_failure()) {
    std::cerr << "assertion failed: " << bad->name << ": " << bad->value << '\n';
    return Exit::Failure;
  }
  return Exit::Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walrasian mechanisms toolkit: exact welfare, prices, payments and equilibrium checks"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  auto instance_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("instance", o.instance, "Instance JSON file")->required();
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    return c;
  };
  auto rule_flag = [&](CLI::App* c) {
    c->add_option("--rule", o.rule, "vcg | english | dutch | paybid")->capture_default_str();
  };
  auto grid_flags = [&](CLI::App* c) {
    c->add_option("--grid-delta", o.grid_delta, "Grid step (default: instance granularity, at least 1/8)");
    c->add_option("--grid-cap", o.grid_cap, "Largest grid weight (default: largest single-item value)");
    c->add_option("--eps-dev", o.eps_dev, "Deviation gain tolerance")->capture_default_str();
  };

  auto* solve = instance_cmd("solve", "Welfare-maximizing allocation of the declared bids");
  auto* prices = instance_cmd("prices", "Minimum and maximum Walrasian prices with certificates");
  auto* mechanism = instance_cmd("mechanism", "Run a payment rule on the declared bids");
  rule_flag(mechanism);
  auto* nash = instance_cmd("verify-nash", "Check the declared bids for a grid-Nash equilibrium");
  rule_flag(nash);
  grid_flags(nash);
  auto* poa = instance_cmd("poa", "Worst welfare ratio over grid-Nash profiles with bounded exposure");
  rule_flag(poa);
  grid_flags(poa);
  poa->add_option("--gamma", o.gamma, "Exposure factor bound")->capture_default_str();
  poa->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();

  auto* prop = app.add_subcommand("property-test", "Seeded property suites");
  prop->add_option("--suite", o.suite, "lemmas | ordering | smoothness | lattice | all")->capture_default_str();
  prop->add_option("--seeds", o.seeds, "Number of seeded draws")->capture_default_str();
  prop->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  prop->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  auto* repro = app.add_subcommand("reproduce", "Scripted worked-example scenarios");
  repro->add_option("case", o.scenario, "example1 | example2 | overbidding | bullying | payment-ranking")->required();
  repro->add_option("--epsilon", o.epsilon, "Perturbation parameter")->capture_default_str();
  repro->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(Exit::Usage);
  }

  std::ostringstream out;
  Exit status = Exit::Ok;
  try {
    if (solve->parsed()) status = cmd_solve(o, out);
    else if (prices->parsed()) status = cmd_prices(o, out);
    else if (mechanism->parsed()) status = cmd_mechanism(o, out);
    else if (nash->parsed()) status = cmd_verify_nash(o, out);
    else if (poa->parsed()) status = cmd_poa(o, out);
    else if (prop->parsed()) status = cmd_property_test(o, out);
    else if (repro->parsed()) status = cmd_reproduce(o, out);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(Exit::Usage);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(Exit::Usage);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(Exit::Usage);
  }
  std::cout << out.str();
  return static_cast<int>(status);
}
