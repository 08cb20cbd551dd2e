#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rbk::selftest {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;  // empty when every case passed

  bool passed() const { return failures == 0; }
};

/// Random rulebooks (<= 6 rules, DAG priorities) scored on <= 8 realizations
/// with integer violations: checks reflexivity and transitivity of the induced
/// order, the equivalence criterion, and lexicographic agreement on chains.
SuiteResult preorder_axioms(std::uint64_t seed, std::size_t cases);

/// Random sequences of <= 4 legal manipulations (priority refinement, linear
/// aggregation, augmentation): the certificate must report strict preservation
/// always, and full preservation when no augmentation occurred.
SuiteResult refinement_theorems(std::uint64_t seed, std::size_t cases);

/// Random rulebook documents must satisfy parse(serialize(doc)) == doc and
/// byte-stable reserialization.
SuiteResult format_round_trip(std::uint64_t seed, std::size_t cases);

/// The three suites at acceptance scale (10000 / 2000 / 500 cases).
std::vector<SuiteResult> run_all(std::uint64_t seed);

}  // namespace rbk::selftest
