#include <catch2/catch_amalgamated.hpp>

#include "property_suite.hpp"

TEST_CASE("property suite: 10^4 randomized cases, zero violations") {
  const auto report = property_suite::run_property_suite(0x53c0ffee, 10000);
  CHECK(report.random_cases == 10000);
  for (const auto& f : report.failures) UNSCOPED_INFO(f);
  REQUIRE(report.violations == 0);
}

TEST_CASE("property suite is seed-deterministic") {
  const auto a = property_suite::run_property_suite(42, 200);
  const auto b = property_suite::run_property_suite(42, 200);
  CHECK(a.checks == b.checks);
  CHECK(a.violations == b.violations);
}
