#include <catch2/catch_amalgamated.hpp>

#include "checks.hpp"
#include "condsets/suites.hpp"

using namespace condsets;

namespace {

SuiteReport run(const std::string& name, std::uint64_t seed, int cases, int fault = 0) {
  SuiteOptions o;
  o.seed = seed;
  o.cases = cases;
  o.fault = fault;
  return run_suite(name, o);
}

}  // namespace

TEST_CASE("every suite passes on the honest implementation") {
  for (const auto& name : suite_names()) {
    SuiteReport r = run(name, 7, 40);
    INFO(name);
    CHECK(r.cases == 40);
    CHECK(r.failures.empty());
  }
}

TEST_CASE("reports are byte-identical across runs of the same seed") {
  for (const auto& name : suite_names()) {
    SuiteReport a = run(name, 11, 30);
    SuiteReport b = run(name, 11, 30);
    INFO(name);
    CHECK(report_json(a).dump() == report_json(b).dump());
  }
  // distinct seeds shuffle the instances, so the reports still agree on shape
  SuiteReport c = run("powerset", 12, 30);
  CHECK(c.cases == 30);
}

TEST_CASE("thread count does not change a report") {
  SuiteOptions one;
  one.seed = 9;
  one.cases = 25;
  one.threads = 1;
  SuiteOptions many = one;
  many.threads = 4;
  for (const auto& name : suite_names()) {
    INFO(name);
    CHECK(report_json(run_suite(name, one)).dump() ==
          report_json(run_suite(name, many)).dump());
  }
}

TEST_CASE("unknown suite names are rejected") {
  SuiteOptions o;
  bool threw = false;
  try {
    run_suite("nosuch", o);
  } catch (const CondError& e) {
    threw = e.code == Errc::UnknownSuite;
  }
  CHECK(threw);
}

TEST_CASE("run_all covers each suite once") {
  SuiteOptions o;
  o.seed = 5;
  o.cases = 8;
  std::vector<SuiteReport> rs = run_all(o);
  REQUIRE(rs.size() == suite_names().size());
  for (std::size_t i = 0; i < rs.size(); i++) CHECK(rs[i].suite == suite_names()[i]);
}

TEST_CASE("the injected complement defect is caught and minimized") {
  SuiteReport r = run("powerset", 3, 60, kFaultComplementSupport);
  REQUIRE(!r.failures.empty());

  ComplementFn buggy = complement_without_support_fix();
  for (const auto& f : r.failures) {
    // the recorded counterexample reproduces the recorded law violation
    PowersetInstance in = powerset_instance_from_json(f.counterexample);
    auto law = powerset_violated_law(in, buggy);
    REQUIRE(law.has_value());
    CHECK(*law == f.law);

    // and it is locally minimal: every shrink candidate passes
    for (const auto& cand : powerset_shrinks(in)) {
      bool still_fails = false;
      try {
        still_fails = powerset_violated_law(cand, buggy).has_value();
      } catch (const CondError&) {
        still_fails = false;
      }
      CHECK(!still_fails);
    }
  }

  // determinism holds for failing runs too
  SuiteReport again = run("powerset", 3, 60, kFaultComplementSupport);
  CHECK(report_json(r).dump() == report_json(again).dump());
}

TEST_CASE("fuzz mixes the suites deterministically") {
  SuiteOptions o;
  o.seed = 21;
  o.cases = 40;
  SuiteReport a = run_fuzz(o);
  SuiteReport b = run_fuzz(o);
  CHECK(a.failures.empty());
  CHECK(report_json(a).dump() == report_json(b).dump());
}
