#include <doctest.h>

#include "walras/fixtures.hpp"
#include "walras/instance_io.hpp"
#include "walras/property_suites.hpp"

using namespace walras;

TEST_CASE("instance round-trip") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BidProfile t = seed % 2 ? sample_gs_profile(seed) : sample_xos_profile(seed);
    const BidProfile b = sample_gs_profile_like(t, seed + 7);
    InstanceFile f = fixtures::to_instance_file("r" + std::to_string(seed), t, b, Money(1, 8), "random");
    const InstanceFile g = instance_from_json(instance_to_json(f));
    CHECK(g == f);
    CHECK(parse_instance_text(instance_to_json(g).dump()) == f);
  }
  InstanceFile tab = fixtures::to_instance_file("tab", fixtures::and_bidder_types());
  CHECK(instance_from_json(instance_to_json(tab)) == tab);
}

TEST_CASE("numbers are written exactly") {
  CHECK(money_to_json(Money(1, 3)) == Json("1/3"));
  CHECK(money_to_json(Money(9, 8)) == Json("1.125"));
  CHECK(money_from_json(Json(2)) == Money(2));
  CHECK(money_from_json(Json("3/4")) == Money(3, 4));
  CHECK_THROWS_AS(money_from_json(Json(0.5)), ParseError);
  CHECK_THROWS_AS(money_from_json(Json("x")), ParseError);
}

TEST_CASE("malformed instances are rejected") {
  const char* bad[] = {
      "not json",
      "[]",
      R"({"players": []})",
      R"({"m": 2, "players": []})",
      R"({"m": 17, "players": [{"valuation": {"type": "additive", "weights": []}}]})",
      R"({"m": -1, "players": [{"valuation": {"type": "additive", "weights": []}}]})",
      R"({"m": 2, "players": [{"valuation": {"type": "additive", "weights": [1]}}]})",
      R"({"m": 2, "players": [{"valuation": {"type": "cubic", "weights": [1, 1]}}]})",
      R"({"m": 2, "players": [{"valuation": {"type": "additive", "weights": [1, -1]}}]})",
      R"({"m": 2, "players": [{"valuation": {"type": "additive", "weights": [1, 0.5]}}]})",
      R"({"m": 2, "players": [{"valuation": {"type": "tabular", "values": [0, 2, 1, 1]}}]})",
      R"({"m": 2, "players": [{"valuation": {"type": "xos", "clauses": []}}]})",
      R"({"m": 2, "players": [{"bid": {"type": "additive", "weights": [1, 1]}}]})",
  };
  for (const char* text : bad) CHECK_THROWS_AS(parse_instance_text(text), ParseError);
  CHECK_THROWS_AS(load_instance("/nonexistent/instance.json"), ParseError);
}

TEST_CASE("reports serialize") {
  const auto out = run_mechanism(PaymentRule::EnglishWalrasian, fixtures::overbidding_types());
  const Json j = outcome_to_json(out);
  CHECK(j["rule"] == "english");
  CHECK(j["allocation"] == Json::parse("[[0,2],[1],[]]"));
  CHECK(j["prices"] == Json::parse(R"(["1","1","1"])"));
  CHECK(j["payments"] == Json::parse(R"(["2","1","0"])"));
}
