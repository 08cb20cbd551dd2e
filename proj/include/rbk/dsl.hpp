#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rbk {

struct RuleDecl {
  std::string id;
  std::string kind;
  std::vector<std::pair<std::string, double>> params;
  bool operator==(const RuleDecl&) const = default;
};

struct AggregateDecl {
  std::string id;
  std::vector<std::pair<std::string, double>> weights;
  bool operator==(const AggregateDecl&) const = default;
};

/// Parsed rulebook source, normalized: rules, group members, priority edges,
/// aggregates and parameter lists all sorted; overlapping groups merged;
/// singleton groups and self-edges dropped.
struct RulebookDoc {
  std::string name;
  double epsilon = 0.0;
  std::vector<RuleDecl> rules;
  std::vector<std::vector<std::string>> groups;
  std::vector<std::pair<std::string, std::string>> priorities;  // (lower, higher)
  std::vector<AggregateDecl> aggregates;
  bool operator==(const RulebookDoc&) const = default;
};

/// Line-oriented parser. Syntax problems throw ParseError with 1-based
/// line/column; undeclared ids, duplicates, ungrouped aggregate sources and
/// priority cycles declared without a group throw SemanticError.
RulebookDoc parse_rulebook(std::string_view text);

/// Canonical text form; parse_rulebook(serialize_rulebook(d)) == d for any
/// valid normalized doc.
std::string serialize_rulebook(const RulebookDoc& doc);

}  // namespace rbk
