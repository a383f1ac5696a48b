#include <doctest.h>

#include "sfsyn/report.hpp"

using namespace sfsyn;

TEST_SUITE("cli-reporting") {

TEST_CASE("bound reports for small n") {
  for (int n = 4; n <= 6; ++n) {
    const VerificationReport r = verify_bound_report(n);
    CAPTURE(to_text(r));
    CHECK(r.passed());
    CHECK(r.assertions.size() == 4);
    CHECK(r.assertions[0].actual == static_cast<std::uint64_t>(wsf_bound(n)));
  }
  CHECK_THROWS_AS(verify_bound_report(3), ArgumentError);
}

TEST_CASE("bound report with the mapping at seven states") {
  const VerificationReport r = verify_bound_report(7);
  CHECK(r.passed());
  CHECK(r.assertions[0].expected == 7781);
  CHECK(r.details["phi_cases"]["1"] == 7781);
}

TEST_CASE("letters report") {
  for (int n = 5; n <= 6; ++n) {
    const VerificationReport r = letters_report(n);
    CHECK(r.passed());
    CHECK(r.assertions.size() == 5);
  }
  CHECK_THROWS_AS(letters_report(4), ArgumentError);
  CHECK_THROWS_AS(letters_report(8), ArgumentError);
}

TEST_CASE("reports serialize deterministically") {
  const VerificationReport a = verify_bound_report(5);
  const VerificationReport b = verify_bound_report(5);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(to_text(a) == to_text(b));
  CHECK_FALSE(to_json(a).contains("timings"));
  CHECK(to_json(a, true).contains("timings"));
  const nlohmann::json j = to_json(a);
  CHECK(j["command"] == "verify-bound");
  CHECK(j["pass"] == true);
  CHECK(j["assertions"][0]["name"] == "witness_size");
}

TEST_CASE("failing assertions keep both values") {
  VerificationReport r;
  r.command = "demo";
  r.check("equal", "one equals one", 1, 1);
  r.check("unequal", "two equals three", 2, 3);
  CHECK_FALSE(r.passed());
  const std::string text = to_text(r);
  CHECK(text.find("PASS equal: expected 1, got 1") != std::string::npos);
  CHECK(text.find("FAIL unequal: expected 2, got 3") != std::string::npos);
  CHECK(text.find("overall FAIL") != std::string::npos);
}

TEST_CASE("suffix-free report gives a counterexample") {
  const Dfa star = parse_dfa("n=1 letters=a initial=0 finals=0\na: 0\n");
  const VerificationReport r = suffix_free_report(star);
  CHECK_FALSE(r.passed());
  CHECK(r.details.contains("counterexample"));
  CHECK(suffix_free_report(witness(5)).passed());
}

TEST_CASE("phi report") {
  CHECK(phi_report(witness(7)).passed());
  CHECK(phi_report(vsf_dfa(7)).passed());
  CHECK_THROWS_AS(phi_report(witness(6)), ArgumentError);
}

TEST_CASE("phi sample report") {
  SampleOptions o;
  o.count = 12;
  o.seed = 5;
  const VerificationReport r = phi_sample_report(o);
  CAPTURE(to_text(r));
  CHECK(r.passed());
  CHECK(r.details["tries"].get<std::size_t>() >= 12);
}

}  // TEST_SUITE
