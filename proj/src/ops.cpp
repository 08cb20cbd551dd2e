#include "rbk/ops.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "rbk/error.hpp"

namespace rbk {

namespace {

std::string format_tuple(std::span<const double> v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

double apply(const Aggregator& agg, std::span<const std::string> ids,
             std::span<const double> values) {
  if (ids.size() != values.size()) throw SemanticError("aggregator tuple arity mismatch");
  if (const auto* lin = std::get_if<LinearAggregator>(&agg)) {
    if (lin->weights.size() != ids.size()) {
      throw SemanticError("linear aggregator weight count does not match rule count");
    }
    double sum = 0.0;
    for (const auto& [id, w] : lin->weights) {
      auto it = std::find(ids.begin(), ids.end(), id);
      if (it == ids.end()) {
        throw SemanticError("linear aggregator names unknown rule '" + id + "'");
      }
      sum += w * values[static_cast<std::size_t>(it - ids.begin())];
    }
    return sum;
  }
  if (std::holds_alternative<MaxAggregator>(agg)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
  }
  return std::get<CustomAggregator>(agg).fn(values);
}

AggregatorCheck validate_aggregator(const Aggregator& agg, std::span<const std::string> ids,
                                    std::span<const std::vector<double>> sample) {
  AggregatorCheck out;
  if (const auto* lin = std::get_if<LinearAggregator>(&agg)) {
    for (const auto& [id, w] : lin->weights) {
      if (!(w > 0.0)) {
        out.reason = "linear weight for '" + id + "' must be positive";
        return out;
      }
    }
  }
  if (const auto* custom = std::get_if<CustomAggregator>(&agg)) {
    if (!custom->declared_monotone) {
      out.reason = "custom aggregator '" + custom->name + "' is not declared monotone";
      return out;
    }
  }
  for (const auto& tuple : sample) {
    if (tuple.size() != ids.size()) {
      out.reason = "sample tuple arity does not match rule count";
      return out;
    }
  }
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = 0; j < sample.size(); ++j) {
      if (i == j) continue;
      const auto& lo = sample[i];
      const auto& hi = sample[j];
      bool all_leq = true;
      bool some_lt = false;
      for (std::size_t k = 0; k < lo.size(); ++k) {
        all_leq = all_leq && lo[k] <= hi[k];
        some_lt = some_lt || lo[k] < hi[k];
      }
      if (!all_leq) continue;
      const double flo = apply(agg, ids, lo);
      const double fhi = apply(agg, ids, hi);
      const bool broken = some_lt ? !(flo < fhi) : !(flo <= fhi);
      if (broken) {
        out.tuple_low = lo;
        out.tuple_high = hi;
        out.reason = "order violation: " + format_tuple(lo) +
                     (some_lt ? " dominates " : " <= ") + format_tuple(hi) +
                     " but aggregate gives " + std::to_string(flo) + " vs " +
                     std::to_string(fhi);
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

Rulebook priority_refine(const Rulebook& rb, const std::string& lower,
                         const std::string& higher) {
  const Preorder& order = rb.order();
  order.index_of(lower);
  order.index_of(higher);
  if (order.lt(higher, lower)) {
    throw SemanticError("priority refinement '" + lower + "' <= '" + higher +
                        "' would reverse the existing strict relation '" + higher + "' < '" +
                        lower + "'");
  }
  Preorder refined = order.with_relation(lower, higher);
  if (!refines(order, refined)) {
    throw SemanticError("priority refinement does not refine the existing order");
  }
  return Rulebook(rb.rules(), std::move(refined), rb.epsilon());
}

OpRecord refine_record(const Rulebook& rb, const std::string& lower,
                       const std::string& higher) {
  OpRecord rec;
  rec.kind = OpRecord::Kind::refine;
  rec.detail = "refine: " + lower + " <= " + higher;
  for (const auto& id : rb.order().elements()) rec.id_map[id] = id;
  return rec;
}

Rulebook aggregate(const Rulebook& rb, const std::vector<std::string>& ids,
                   const std::string& new_id, const Aggregator& agg,
                   std::span<const ViolationProfile> sample) {
  if (ids.empty()) throw SemanticError("aggregate: no rules named");
  std::set<std::string> id_set(ids.begin(), ids.end());
  if (id_set.size() != ids.size()) throw SemanticError("aggregate: repeated rule id");
  for (const auto& id : ids) rb.order().index_of(id);
  for (const auto& a : ids) {
    for (const auto& b : ids) {
      if (!rb.order().equivalent(a, b)) {
        throw SemanticError("aggregate: rules '" + a + "' and '" + b +
                            "' are not equivalent in the priority order");
      }
    }
  }
  if (rb.order().contains(new_id) && !id_set.count(new_id)) {
    throw SemanticError("aggregate: new id '" + new_id + "' already names a rule");
  }

  std::vector<std::vector<double>> tuples;
  tuples.reserve(sample.size());
  for (const auto& p : sample) {
    std::vector<double> t;
    t.reserve(ids.size());
    for (const auto& id : ids) t.push_back(p.value(id));
    tuples.push_back(std::move(t));
  }
  if (AggregatorCheck check = validate_aggregator(agg, ids, tuples); !check) {
    throw SemanticError("aggregate: aggregator rejected: " + check.reason);
  }

  // New rule evaluates the collapsed rules and aggregates.
  std::vector<Rule> collapsed;
  for (const auto& id : ids) collapsed.push_back(rb.rule(id));
  Rule combined{
      new_id, "aggregate of " + std::to_string(ids.size()) + " rules",
      [ids, collapsed, agg](const Realization& x) {
        std::vector<double> values;
        values.reserve(collapsed.size());
        for (const auto& r : collapsed) values.push_back(r.violation(x));
        return apply(agg, ids, values);
      }};

  std::vector<Rule> rules;
  for (const auto& r : rb.rules()) {
    if (!id_set.count(r.id)) rules.push_back(r);
  }
  rules.push_back(std::move(combined));

  // Re-parent relations touching the collapsed class onto the new id.
  auto rename = [&](const std::string& id) { return id_set.count(id) ? new_id : id; };
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [a, b] : rb.order().relations()) {
    const std::string ra = rename(a), rc = rename(b);
    if (ra != rc) edges.emplace_back(ra, rc);
  }
  std::vector<std::string> elements;
  for (const auto& r : rules) elements.push_back(r.id);
  return Rulebook(std::move(rules), Preorder(std::move(elements), std::move(edges)),
                  rb.epsilon());
}

OpRecord aggregate_record(const Rulebook& rb, const std::vector<std::string>& ids,
                          const std::string& new_id) {
  OpRecord rec;
  rec.kind = OpRecord::Kind::aggregate;
  std::ostringstream os;
  os << "aggregate: {";
  for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? ", " : "") << ids[i];
  os << "} -> " << new_id;
  rec.detail = os.str();
  const std::set<std::string> id_set(ids.begin(), ids.end());
  for (const auto& id : rb.order().elements()) {
    rec.id_map[id] = id_set.count(id) ? new_id : id;
  }
  return rec;
}

Rulebook augment(const Rulebook& rb, Rule new_rule) {
  if (rb.order().contains(new_rule.id)) {
    throw SemanticError("augment: rule id '" + new_rule.id + "' already exists");
  }
  auto edges = rb.order().relations();
  for (const auto& id : rb.order().elements()) edges.emplace_back(new_rule.id, id);
  auto elements = rb.order().elements();
  elements.push_back(new_rule.id);
  auto rules = rb.rules();
  rules.push_back(std::move(new_rule));
  return Rulebook(std::move(rules), Preorder(std::move(elements), std::move(edges)),
                  rb.epsilon());
}

OpRecord augment_record(const Rulebook& rb, const std::string& new_id) {
  OpRecord rec;
  rec.kind = OpRecord::Kind::augment;
  rec.detail = "augment: new lowest rule " + new_id;
  for (const auto& id : rb.order().elements()) rec.id_map[id] = id;
  return rec;
}

RefinementCertificate certify_strict_refinement(const Rulebook& before, const Rulebook& after,
                                                std::span<const Realization> sample,
                                                OpRecord operation) {
  RefinementCertificate cert;
  cert.operation = std::move(operation);
  std::vector<ViolationProfile> pb, pa;
  for (const auto& x : sample) {
    pb.push_back(profile(before, x));
    pa.push_back(profile(after, x));
    cert.sample.emplace_back(pb.back(), pa.back());
  }
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = 0; j < sample.size(); ++j) {
      if (i == j) continue;
      const bool leq_before = induced_leq(before, pb[i], pb[j]);
      const bool leq_after = induced_leq(after, pa[i], pa[j]);
      const bool lt_before = leq_before && !induced_leq(before, pb[j], pb[i]);
      const bool lt_after = leq_after && !induced_leq(after, pa[j], pa[i]);
      const bool strict_broken = lt_before && !lt_after;
      const bool full_broken = leq_before && !leq_after;
      if (strict_broken) cert.strict_preserved = false;
      if (full_broken) cert.full_preserved = false;
      if ((strict_broken || full_broken) && !cert.first_violation) {
        cert.first_violation = CertificateViolation{
            pb[i].realization_id(), pb[j].realization_id(), compare(before, pb[i], pb[j]),
            compare(after, pa[i], pa[j]), strict_broken};
      }
    }
  }
  return cert;
}

std::vector<ForbiddenDemo> forbidden_op_demos() {
  std::vector<ForbiddenDemo> out;
  const std::vector<Realization> xy = {synthetic_realization("x"), synthetic_realization("y")};

  auto make = [&](std::string name, std::string note, Rulebook before, Rulebook after) {
    RefinementCertificate cert = certify_strict_refinement(
        before, after, xy, OpRecord{OpRecord::Kind::unspecified, "add rule: " + name, {}});
    out.push_back(ForbiddenDemo{std::move(name), std::move(note), std::move(before),
                                std::move(after), xy, std::move(cert)});
  };

  // (i) new rule above everything: the old top no longer has the last word.
  {
    Rulebook before({table_rule("u", {{"x", 0}, {"y", 1}})}, Preorder({"u"}));
    Rulebook after({table_rule("u", {{"x", 0}, {"y", 1}}),
                    table_rule("r_top", {{"x", 1}, {"y", 0}})},
                   Preorder({"u", "r_top"}, {{"u", "r_top"}}));
    make("top", "a rule added above every existing rule can reverse strict pairs",
         std::move(before), std::move(after));
  }
  // (ii) new rule in the middle: above u, incomparable to the old top u'.
  {
    Rulebook before({table_rule("u", {{"x", 0}, {"y", 1}}),
                     table_rule("u_top", {{"x", 5}, {"y", 5}})},
                    Preorder({"u", "u_top"}, {{"u", "u_top"}}));
    Rulebook after({table_rule("u", {{"x", 0}, {"y", 1}}),
                    table_rule("u_top", {{"x", 5}, {"y", 5}}),
                    table_rule("r_mid", {{"x", 1}, {"y", 0}})},
                   Preorder({"u", "u_top", "r_mid"}, {{"u", "u_top"}, {"u", "r_mid"}}));
    make("middle", "a rule inserted above a non-top rule can reverse pairs it now decides",
         std::move(before), std::move(after));
  }
  // (iii) new incomparable rule: a strict pair degrades to incomparable.
  {
    Rulebook before({table_rule("u", {{"x", 0}, {"y", 1}})}, Preorder({"u"}));
    Rulebook after({table_rule("u", {{"x", 0}, {"y", 1}}),
                    table_rule("r_side", {{"x", 1}, {"y", 0}})},
                   Preorder({"u", "r_side"}));
    make("incomparable", "a rule incomparable to the rest makes formerly strict pairs undecided",
         std::move(before), std::move(after));
  }
  return out;
}

}  // namespace rbk
