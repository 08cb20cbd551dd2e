#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rbk/rulebook.hpp"

namespace rbk {

/// Positive linear combination; always order-embedding on non-negative tuples.
struct LinearAggregator {
  std::vector<std::pair<std::string, double>> weights;  // rule id -> weight > 0
};

/// Componentwise maximum. Monotone but not an embedding: it can merge tuples
/// that were strictly ordered, so validation rejects it on such samples.
struct MaxAggregator {};

/// User-supplied map. Only accepted when declared monotone, and still checked
/// empirically on the sample.
struct CustomAggregator {
  std::string name;
  std::function<double(std::span<const double>)> fn;
  bool declared_monotone = false;
};

using Aggregator = std::variant<LinearAggregator, MaxAggregator, CustomAggregator>;

/// Applies the aggregator to one value tuple; `ids` gives the tuple's rule ids
/// in order. LinearAggregator weights must cover exactly these ids.
double apply(const Aggregator& agg, std::span<const std::string> ids,
             std::span<const double> values);

struct AggregatorCheck {
  bool ok = false;
  std::string reason;  // empty when ok
  // counterexample pair when not ok for an order violation
  std::vector<double> tuple_low, tuple_high;

  explicit operator bool() const { return ok; }
};

/// Empirically checks the embedding property on every pair of sample tuples:
/// componentwise <= must map to <=, strictly-dominating pairs must map to <.
AggregatorCheck validate_aggregator(const Aggregator& agg, std::span<const std::string> ids,
                                    std::span<const std::vector<double>> sample);

/// How an `after` rulebook came to be, with collapsed ids recorded.
struct OpRecord {
  enum class Kind { refine, aggregate, augment, unspecified };
  Kind kind = Kind::unspecified;
  std::string detail;                         // human-readable
  std::map<std::string, std::string> id_map;  // before rule id -> after rule id
};

/// Adds the priority relation lower <= higher. Throws SemanticError on unknown
/// ids or when the addition would reverse an existing strict pair (the result
/// must refine the old order).
Rulebook priority_refine(const Rulebook& rb, const std::string& lower,
                         const std::string& higher);
OpRecord refine_record(const Rulebook& rb, const std::string& lower, const std::string& higher);

/// Collapses `ids` (which must be mutually equivalent in rb's order) into one
/// new rule applying `agg` to their values. The new rule inherits the class's
/// priority relations. The aggregator is validated on the sample profiles
/// first; failures throw SemanticError quoting the violating value pair.
Rulebook aggregate(const Rulebook& rb, const std::vector<std::string>& ids,
                   const std::string& new_id, const Aggregator& agg,
                   std::span<const ViolationProfile> sample);
OpRecord aggregate_record(const Rulebook& rb, const std::vector<std::string>& ids,
                          const std::string& new_id);

/// Adds a rule strictly below every existing rule.
Rulebook augment(const Rulebook& rb, Rule new_rule);
OpRecord augment_record(const Rulebook& rb, const std::string& new_id);

/// Outcome of checking one pair of realizations under both rulebooks.
struct CertificateViolation {
  std::string x, y;
  Verdict before;
  Verdict after;
  bool strict_level = false;  // true: a strict pair was lost; false: only <= was lost
};

/// Exhaustive check over all ordered pairs of the sample:
///   strict_preserved: x < y before implies x < y after;
///   full_preserved:   x <= y before implies x <= y after.
struct RefinementCertificate {
  OpRecord operation;
  std::vector<std::pair<ViolationProfile, ViolationProfile>> sample;  // (before, after) profiles
  bool strict_preserved = true;
  bool full_preserved = true;
  std::optional<CertificateViolation> first_violation;
};

RefinementCertificate certify_strict_refinement(const Rulebook& before, const Rulebook& after,
                                                std::span<const Realization> sample,
                                                OpRecord operation = {});

/// Named constructions showing which rule additions break strict refinement:
/// a new top rule, a new middle rule, and a new incomparable rule. Each ships
/// the rulebooks, the realizations, and a failing certificate.
struct ForbiddenDemo {
  std::string name;
  std::string note;
  Rulebook before;
  Rulebook after;
  std::vector<Realization> sample;
  RefinementCertificate certificate;
};

std::vector<ForbiddenDemo> forbidden_op_demos();

}  // namespace rbk
