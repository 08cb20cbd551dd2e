#include "doctest.h"
#include "rbk/selftest.hpp"

using namespace rbk;

TEST_CASE("self-test suites pass at reduced scale") {
  const auto preorder = selftest::preorder_axioms(0xA11CE, 400);
  CHECK(preorder.cases == 400);
  CHECK(preorder.failures == 0);
  CHECK(preorder.first_failure.empty());

  const auto refinement = selftest::refinement_theorems(0xB0B, 200);
  CHECK(refinement.cases == 200);
  CHECK(refinement.failures == 0);

  const auto format = selftest::format_round_trip(0xC0FFEE, 150);
  CHECK(format.cases == 150);
  CHECK(format.failures == 0);
}

TEST_CASE("self-test results are reproducible for a fixed seed") {
  const auto a = selftest::preorder_axioms(7, 120);
  const auto b = selftest::preorder_axioms(7, 120);
  CHECK(a.failures == b.failures);
  CHECK(a.first_failure == b.first_failure);
  CHECK(a.name == "preorder axioms");
}
