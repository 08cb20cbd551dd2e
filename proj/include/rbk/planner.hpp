#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rbk/realization.hpp"
#include "rbk/rulebook.hpp"

namespace rbk {

/// The finite candidate pool the selector chooses from.
struct CandidateSet {
  std::vector<Realization> realizations;

  void validate() const;  // throws SemanticError when empty or ids repeat
};

/// Everything a caller needs to explain a selection. Candidates appear in
/// sorted id order in every field.
struct RankingReport {
  std::vector<std::string> ids;
  std::vector<ViolationProfile> profiles;
  std::vector<std::vector<Verdict>> verdicts;  // verdicts[i][j] = compare(ids[i], ids[j])
  std::vector<std::string> minimal;            // one representative per minimal class
  std::vector<std::string> minimal_all;        // every member of the minimal classes
  std::optional<std::vector<std::string>> total_order;  // present for chain rulebooks
  std::vector<std::pair<std::string, std::string>> hasse_edges;  // (lower, higher)
};

RankingReport rank(const Rulebook& rb, const CandidateSet& cs);

/// Transitive reduction of the strict order on equivalence-class
/// representatives, derived from the report's verdict matrix.
std::vector<std::pair<std::string, std::string>> hasse(const RankingReport& report);

/// Lexicographically smallest id among the minimal candidates.
std::string select(const Rulebook& rb, const CandidateSet& cs);

}  // namespace rbk
