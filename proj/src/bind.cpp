#include "rbk/bind.hpp"

#include <set>
#include <utility>
#include <vector>

#include "rbk/driving.hpp"
#include "rbk/error.hpp"
#include "rbk/ops.hpp"

namespace rbk {

Rulebook bind_rulebook(const RulebookDoc& doc, const DrivingParams& params) {
  std::vector<Rule> rules;
  std::vector<std::string> ids;
  for (const auto& decl : doc.rules) {
    const std::map<std::string, double> rule_params(decl.params.begin(), decl.params.end());
    rules.push_back(make_driving_rule(decl.id, decl.kind, params, rule_params));
    ids.push_back(decl.id);
  }

  auto edges = doc.priorities;
  for (const auto& group : doc.groups) {
    for (std::size_t i = 0; i + 1 < group.size(); ++i) {
      edges.emplace_back(group[i], group[i + 1]);
      edges.emplace_back(group[i + 1], group[i]);
    }
  }

  Rulebook rb(std::move(rules), Preorder(ids, std::move(edges)), doc.epsilon);
  for (const auto& agg : doc.aggregates) {
    LinearAggregator lin{agg.weights};
    std::vector<std::string> sources;
    for (const auto& [src, weight] : agg.weights) {
      sources.push_back(src);
      (void)weight;
    }
    rb = aggregate(rb, sources, agg.id, lin, {});
  }
  return rb;
}

namespace {

// Effective ids after the document's aggregates run: declared rules minus
// consumed sources, plus the aggregate ids.
std::set<std::string> effective_ids(const RulebookDoc& doc) {
  std::set<std::string> out;
  for (const auto& r : doc.rules) out.insert(r.id);
  for (const auto& a : doc.aggregates) {
    for (const auto& [src, weight] : a.weights) {
      out.erase(src);
      (void)weight;
    }
    out.insert(a.id);
  }
  return out;
}

}  // namespace

std::map<std::string, std::string> transport_map(const RulebookDoc& before,
                                                 const RulebookDoc& after) {
  const std::set<std::string> after_ids = effective_ids(after);
  std::map<std::string, std::string> consumed_by;
  for (const auto& a : after.aggregates) {
    for (const auto& [src, weight] : a.weights) {
      consumed_by[src] = a.id;
      (void)weight;
    }
  }

  std::map<std::string, std::string> mapping;
  for (const auto& id : effective_ids(before)) {
    if (after_ids.count(id)) {
      mapping[id] = id;
    } else if (auto it = consumed_by.find(id); it != consumed_by.end()) {
      mapping[id] = it->second;
    } else {
      throw SemanticError("rule '" + id + "' has no counterpart in the refined rulebook");
    }
  }
  return mapping;
}

}  // namespace rbk
