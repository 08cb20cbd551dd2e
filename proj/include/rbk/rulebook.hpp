#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rbk/preorder.hpp"
#include "rbk/realization.hpp"

namespace rbk {

/// A rule scores how badly a realization violates it: 0 is full compliance,
/// larger is worse. Values must be finite and non-negative.
struct Rule {
  std::string id;
  std::string description;
  std::function<double(const Realization&)> violation;
};

/// Finite rule set plus a priority pre-order over the rule ids.
/// The relation (a, b) reads "a <= b": b outranks a.
class Rulebook {
 public:
  /// Throws SemanticError unless the order's elements are exactly the rule ids,
  /// the set is non-empty, and epsilon >= 0.
  Rulebook(std::vector<Rule> rules, Preorder order, double epsilon = 0.0);

  const std::vector<Rule>& rules() const { return rules_; }  // sorted by id
  const Rule& rule(const std::string& id) const;
  const Preorder& order() const { return order_; }
  double epsilon() const { return epsilon_; }
  std::vector<std::string> rule_ids() const;

 private:
  std::vector<Rule> rules_;
  Preorder order_;
  double epsilon_;
};

/// Violation values of one realization under every rule of some rulebook.
class ViolationProfile {
 public:
  ViolationProfile() = default;
  /// Entries are sorted by rule id; duplicate rule ids throw SemanticError.
  ViolationProfile(std::string realization_id,
                   std::vector<std::pair<std::string, double>> values);

  const std::string& realization_id() const { return realization_id_; }
  const std::vector<std::pair<std::string, double>>& values() const { return values_; }
  bool has(const std::string& rule_id) const;
  double value(const std::string& rule_id) const;  // throws SemanticError on missing rule

 private:
  std::string realization_id_;
  std::vector<std::pair<std::string, double>> values_;
};

/// Rule scoring realizations purely by id lookup. Values must be >= 0; unknown
/// realization ids throw EvalError at evaluation time.
Rule table_rule(std::string id, std::map<std::string, double> values,
                std::string description = "");

/// Evaluates every rule once. Throws EvalError naming rule and realization if a
/// violation function fails or returns a negative/non-finite value.
ViolationProfile profile(const Rulebook& rb, const Realization& x);

/// Induced comparison: x is no worse than y iff every rule preferring y is
/// outranked by some rule preferring x. Values compare with the rulebook's
/// epsilon tolerance (v < w means v < w - epsilon).
bool induced_leq(const Rulebook& rb, const ViolationProfile& x, const ViolationProfile& y);

enum class Verdict { less_than, greater_than, equivalent, incomparable };

const char* to_string(Verdict v);

/// less_than means x is strictly better (lower violation) than y.
Verdict compare(const Rulebook& rb, const ViolationProfile& x, const ViolationProfile& y);

/// Ids of candidates no other candidate strictly beats; sorted. By default one
/// representative (smallest id) per equivalence class; all_equivalent keeps all.
/// Throws SemanticError on an empty candidate list.
std::vector<std::string> minimal_set(const Rulebook& rb,
                                     std::span<const ViolationProfile> candidates,
                                     bool all_equivalent = false);

/// Total ranking for a chain rulebook (best first; equivalents tie-broken by id).
/// Throws SemanticError when the rule order is not a chain.
std::vector<std::string> lex_rank(const Rulebook& rb,
                                  std::span<const ViolationProfile> candidates);

}  // namespace rbk
