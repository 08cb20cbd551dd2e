#include "rbk/rulebook.hpp"

#include <algorithm>
#include <cmath>

#include "rbk/error.hpp"

namespace rbk {

Rulebook::Rulebook(std::vector<Rule> rules, Preorder order, double epsilon)
    : rules_(std::move(rules)), order_(std::move(order)), epsilon_(epsilon) {
  if (rules_.empty()) throw SemanticError("rulebook has no rules");
  if (epsilon_ < 0.0) throw SemanticError("rulebook epsilon must be >= 0");
  std::sort(rules_.begin(), rules_.end(),
            [](const Rule& a, const Rule& b) { return a.id < b.id; });
  std::vector<std::string> ids;
  for (const auto& r : rules_) {
    if (!ids.empty() && ids.back() == r.id) {
      throw SemanticError("duplicate rule id '" + r.id + "'");
    }
    ids.push_back(r.id);
  }
  if (order_.elements() != ids) {
    throw SemanticError("rulebook order elements do not match the rule ids");
  }
}

const Rule& Rulebook::rule(const std::string& id) const {
  auto it = std::lower_bound(rules_.begin(), rules_.end(), id,
                             [](const Rule& r, const std::string& key) { return r.id < key; });
  if (it == rules_.end() || it->id != id) throw SemanticError("unknown rule '" + id + "'");
  return *it;
}

std::vector<std::string> Rulebook::rule_ids() const {
  std::vector<std::string> ids;
  ids.reserve(rules_.size());
  for (const auto& r : rules_) ids.push_back(r.id);
  return ids;
}

ViolationProfile::ViolationProfile(std::string realization_id,
                                   std::vector<std::pair<std::string, double>> values)
    : realization_id_(std::move(realization_id)), values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
    if (values_[i].first == values_[i + 1].first) {
      throw SemanticError("profile for '" + realization_id_ + "' repeats rule '" +
                          values_[i].first + "'");
    }
  }
}

bool ViolationProfile::has(const std::string& rule_id) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), rule_id,
                             [](const auto& v, const std::string& key) { return v.first < key; });
  return it != values_.end() && it->first == rule_id;
}

double ViolationProfile::value(const std::string& rule_id) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), rule_id,
                             [](const auto& v, const std::string& key) { return v.first < key; });
  if (it == values_.end() || it->first != rule_id) {
    throw SemanticError("profile for '" + realization_id_ + "' has no value for rule '" +
                        rule_id + "'");
  }
  return it->second;
}

Rule table_rule(std::string id, std::map<std::string, double> values,
                std::string description) {
  for (const auto& [k, v] : values) {
    if (v < 0.0) {
      throw SemanticError("table rule '" + id + "': negative value for '" + k + "'");
    }
  }
  auto lookup = [id, values = std::move(values)](const Realization& x) {
    auto it = values.find(x.id());
    if (it == values.end()) {
      throw EvalError("no table value for realization '" + x.id() + "'");
    }
    return it->second;
  };
  return Rule{std::move(id), std::move(description), std::move(lookup)};
}

ViolationProfile profile(const Rulebook& rb, const Realization& x) {
  std::vector<std::pair<std::string, double>> values;
  values.reserve(rb.rules().size());
  for (const auto& r : rb.rules()) {
    double v = 0.0;
    try {
      v = r.violation(x);
    } catch (const Error& e) {
      throw EvalError("rule '" + r.id + "' on candidate '" + x.id() + "': " + e.what());
    }
    if (!std::isfinite(v) || v < 0.0) {
      throw EvalError("rule '" + r.id + "' on candidate '" + x.id() +
                      "': violation must be finite and >= 0, got " + std::to_string(v));
    }
    values.emplace_back(r.id, v);
  }
  return ViolationProfile(x.id(), std::move(values));
}

namespace {

// Values of both profiles aligned to the order's element indexing.
struct AlignedValues {
  std::vector<double> x, y;
};

AlignedValues align(const Rulebook& rb, const ViolationProfile& px, const ViolationProfile& py) {
  AlignedValues out;
  const auto& elements = rb.order().elements();
  out.x.reserve(elements.size());
  out.y.reserve(elements.size());
  for (const auto& id : elements) {
    out.x.push_back(px.value(id));
    out.y.push_back(py.value(id));
  }
  return out;
}

bool induced_leq_aligned(const Rulebook& rb, const AlignedValues& v) {
  const double eps = rb.epsilon();
  const Preorder& order = rb.order();
  const std::size_t n = order.size();
  // Direct transcription of the induced pre-order: every rule that strictly
  // prefers y must be outranked by a rule that strictly prefers x.
  for (std::size_t i = 0; i < n; ++i) {
    if (v.y[i] < v.x[i] - eps) {
      bool overridden = false;
      for (std::size_t j = 0; j < n && !overridden; ++j) {
        overridden = order.lt_idx(i, j) && v.x[j] < v.y[j] - eps;
      }
      if (!overridden) return false;
    }
  }
  return true;
}

}  // namespace

bool induced_leq(const Rulebook& rb, const ViolationProfile& x, const ViolationProfile& y) {
  return induced_leq_aligned(rb, align(rb, x, y));
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::less_than: return "less_than";
    case Verdict::greater_than: return "greater_than";
    case Verdict::equivalent: return "equivalent";
    case Verdict::incomparable: return "incomparable";
  }
  return "?";
}

Verdict compare(const Rulebook& rb, const ViolationProfile& x, const ViolationProfile& y) {
  const AlignedValues v = align(rb, x, y);
  const AlignedValues rev{v.y, v.x};
  const bool xy = induced_leq_aligned(rb, v);
  const bool yx = induced_leq_aligned(rb, rev);
  if (xy && yx) return Verdict::equivalent;
  if (xy) return Verdict::less_than;
  if (yx) return Verdict::greater_than;
  return Verdict::incomparable;
}

std::vector<std::string> minimal_set(const Rulebook& rb,
                                     std::span<const ViolationProfile> candidates,
                                     bool all_equivalent) {
  if (candidates.empty()) throw SemanticError("minimal_set: no candidates");
  const std::size_t n = candidates.size();
  std::vector<bool> minimal(n, true);
  std::vector<Verdict> verdicts(n * n, Verdict::equivalent);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) verdicts[i * n + j] = compare(rb, candidates[i], candidates[j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && verdicts[j * n + i] == Verdict::less_than) minimal[i] = false;
    }
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!minimal[i]) continue;
    if (!all_equivalent) {
      // keep only the smallest id of each equivalence class
      bool represented = false;
      for (std::size_t j = 0; j < n && !represented; ++j) {
        represented = j != i && minimal[j] &&
                      verdicts[i * n + j] == Verdict::equivalent &&
                      candidates[j].realization_id() < candidates[i].realization_id();
      }
      if (represented) continue;
    }
    out.push_back(candidates[i].realization_id());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> lex_rank(const Rulebook& rb,
                                  std::span<const ViolationProfile> candidates) {
  if (!rb.order().is_chain()) {
    throw SemanticError(
        "lex_rank needs a chain rulebook (totally ordered, no equivalent rules); "
        "use minimal_set for partial orders");
  }
  if (candidates.empty()) throw SemanticError("lex_rank: no candidates");
  // Repeated minimal extraction via compare keeps the result aligned with the
  // induced order even when epsilon ties are in play.
  std::vector<std::size_t> remaining(candidates.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::string> out;
  while (!remaining.empty()) {
    std::size_t pick = kNone;
    for (std::size_t ii = 0; ii < remaining.size(); ++ii) {
      const std::size_t i = remaining[ii];
      bool beaten = false;
      for (std::size_t jj = 0; jj < remaining.size() && !beaten; ++jj) {
        const std::size_t j = remaining[jj];
        beaten = j != i &&
                 compare(rb, candidates[j], candidates[i]) == Verdict::less_than;
      }
      if (beaten) continue;
      if (pick == kNone ||
          candidates[i].realization_id() < candidates[pick].realization_id()) {
        pick = i;
      }
    }
    if (pick == kNone) {
      throw SemanticError("lex_rank: epsilon tolerance produced a comparison cycle");
    }
    out.push_back(candidates[pick].realization_id());
    remaining.erase(std::find(remaining.begin(), remaining.end(), pick));
  }
  return out;
}

}  // namespace rbk
