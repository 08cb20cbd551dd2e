#include "rbk/planner.hpp"

#include <algorithm>
#include <set>

#include "rbk/error.hpp"

namespace rbk {

void CandidateSet::validate() const {
  if (realizations.empty()) {
    throw SemanticError("candidate set must not be empty");
  }
  std::set<std::string> seen;
  for (const auto& r : realizations) {
    if (!seen.insert(r.id()).second) {
      throw SemanticError("duplicate candidate id '" + r.id() + "'");
    }
  }
}

RankingReport rank(const Rulebook& rb, const CandidateSet& cs) {
  cs.validate();
  std::vector<const Realization*> ordered;
  for (const auto& r : cs.realizations) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const Realization* a, const Realization* b) { return a->id() < b->id(); });

  RankingReport rep;
  for (const Realization* r : ordered) {
    rep.ids.push_back(r->id());
    rep.profiles.push_back(profile(rb, *r));
  }
  const std::size_t n = rep.ids.size();
  rep.verdicts.assign(n, std::vector<Verdict>(n, Verdict::equivalent));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rep.verdicts[i][j] = compare(rb, rep.profiles[i], rep.profiles[j]);
    }
  }
  rep.minimal = minimal_set(rb, rep.profiles);
  rep.minimal_all = minimal_set(rb, rep.profiles, true);
  if (rb.order().is_chain()) {
    rep.total_order = lex_rank(rb, rep.profiles);
  }
  rep.hasse_edges = hasse(rep);
  return rep;
}

std::vector<std::pair<std::string, std::string>> hasse(const RankingReport& report) {
  const std::size_t n = report.ids.size();
  // ids are sorted, so the first member of each equivalence class is its
  // representative
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i) {
    bool duplicate = false;
    for (std::size_t j = 0; j < i && !duplicate; ++j) {
      duplicate = report.verdicts[i][j] == Verdict::equivalent;
    }
    if (!duplicate) reps.push_back(i);
  }
  auto lt = [&](std::size_t i, std::size_t j) {
    return report.verdicts[i][j] == Verdict::less_than;
  };
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i : reps) {
    for (std::size_t j : reps) {
      if (!lt(i, j)) continue;
      bool shortcut = false;
      for (std::size_t k : reps) {
        if (lt(i, k) && lt(k, j)) {
          shortcut = true;
          break;
        }
      }
      if (!shortcut) edges.emplace_back(report.ids[i], report.ids[j]);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::string select(const Rulebook& rb, const CandidateSet& cs) {
  return rank(rb, cs).minimal.front();
}

}  // namespace rbk
