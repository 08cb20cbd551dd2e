#include "rbk/selftest.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "rbk/dsl.hpp"
#include "rbk/error.hpp"
#include "rbk/ops.hpp"
#include "rbk/realization.hpp"
#include "rbk/rulebook.hpp"

namespace rbk::selftest {

namespace {

// splitmix64: tiny, seedable, byte-stable across platforms
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  bool chance(double p) { return static_cast<double>(next() >> 11) / 9007199254740992.0 < p; }
};

std::vector<std::string> id_range(const char* stem, std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(stem + std::to_string(i));
  return ids;
}

struct Failure {
  std::size_t count = 0;
  std::string first;

  void record(std::size_t case_no, const std::string& what) {
    ++count;
    if (first.empty()) first = "case " + std::to_string(case_no) + ": " + what;
  }
};

// ---------------------------------------------------------------- preorder --

struct RandomInstance {
  Rulebook rb;
  std::vector<ViolationProfile> profiles;
  bool chain;
};

RandomInstance random_instance(Rng& rng) {
  const std::size_t n_rules = 1 + rng.below(6);
  const std::size_t n_real = 2 + rng.below(7);
  const auto rule_ids = id_range("r", n_rules);
  const auto real_ids = id_range("x", n_real);

  std::vector<Rule> rules;
  for (const auto& rid : rule_ids) {
    std::map<std::string, double> table;
    for (const auto& xid : real_ids) table[xid] = static_cast<double>(rng.below(4));
    rules.push_back(table_rule(rid, std::move(table)));
  }

  const bool chain = rng.chance(0.25);
  std::vector<std::pair<std::string, std::string>> edges;
  if (chain) {
    for (std::size_t i = 0; i + 1 < n_rules; ++i) edges.emplace_back(rule_ids[i], rule_ids[i + 1]);
  } else {
    for (std::size_t i = 0; i < n_rules; ++i) {
      for (std::size_t j = i + 1; j < n_rules; ++j) {
        if (rng.chance(0.4)) edges.emplace_back(rule_ids[i], rule_ids[j]);
      }
    }
  }

  Rulebook rb(std::move(rules), Preorder(rule_ids, edges));
  std::vector<ViolationProfile> profiles;
  for (const auto& xid : real_ids) profiles.push_back(profile(rb, synthetic_realization(xid)));
  return RandomInstance{std::move(rb), std::move(profiles), chain};
}

// independent oracle: walk a chain's rules from the top; first difference wins
Verdict lex_verdict(const std::vector<std::string>& top_down, const ViolationProfile& a,
                    const ViolationProfile& b) {
  for (const auto& rid : top_down) {
    if (a.value(rid) < b.value(rid)) return Verdict::less_than;
    if (b.value(rid) < a.value(rid)) return Verdict::greater_than;
  }
  return Verdict::equivalent;
}

SuiteResult run_preorder(std::uint64_t seed, std::size_t cases) {
  Rng rng(seed);
  Failure fail;
  for (std::size_t c = 0; c < cases; ++c) {
    RandomInstance inst = random_instance(rng);
    const std::size_t n = inst.profiles.size();

    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        leq[i][j] = induced_leq(inst.rb, inst.profiles[i], inst.profiles[j]);
      }
    }

    for (std::size_t i = 0; i < n && fail.count == 0; ++i) {
      if (!leq[i][i]) fail.record(c, "reflexivity broken at " + inst.profiles[i].realization_id());
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          if (leq[i][j] && leq[j][k] && !leq[i][k]) {
            fail.record(c, "transitivity broken");
            i = j = n - 1;
            break;
          }
        }
      }
    }

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Verdict v = compare(inst.rb, inst.profiles[i], inst.profiles[j]);
        bool all_equal = true;
        for (const auto& [rid, value] : inst.profiles[i].values()) {
          if (value != inst.profiles[j].value(rid)) {
            all_equal = false;
            break;
          }
        }
        if ((v == Verdict::equivalent) != all_equal) {
          fail.record(c, "equivalence criterion broken");
        }
      }
    }

    if (inst.chain) {
      auto top_down = inst.rb.rule_ids();
      std::sort(top_down.begin(), top_down.end(),
                [&](const std::string& a, const std::string& b) {
                  return inst.rb.order().lt(b, a);  // highest priority first
                });
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const Verdict got = compare(inst.rb, inst.profiles[i], inst.profiles[j]);
          const Verdict want = lex_verdict(top_down, inst.profiles[i], inst.profiles[j]);
          if (got != want) fail.record(c, "chain disagrees with lexicographic order");
        }
      }
    }
  }
  return SuiteResult{"preorder axioms", cases, fail.count, fail.first};
}

// -------------------------------------------------------------- refinement --

Rulebook random_class_rulebook(Rng& rng, const std::vector<std::string>& real_ids) {
  const std::size_t n_rules = 2 + rng.below(4);
  const auto rule_ids = id_range("r", n_rules);

  std::vector<Rule> rules;
  for (const auto& rid : rule_ids) {
    std::map<std::string, double> table;
    for (const auto& xid : real_ids) table[xid] = static_cast<double>(rng.below(4));
    rules.push_back(table_rule(rid, std::move(table)));
  }

  std::vector<std::vector<std::string>> classes;
  for (const auto& rid : rule_ids) {
    if (classes.empty() || rng.chance(0.6)) {
      classes.push_back({rid});
    } else {
      classes[rng.below(classes.size())].push_back(rid);
    }
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& cls : classes) {
    for (std::size_t i = 0; i + 1 < cls.size(); ++i) {
      edges.emplace_back(cls[i], cls[i + 1]);
      edges.emplace_back(cls[i + 1], cls[i]);
    }
  }
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      if (rng.chance(0.5)) edges.emplace_back(classes[i][0], classes[j][0]);
    }
  }
  return Rulebook(std::move(rules), Preorder(rule_ids, edges));
}

SuiteResult run_refinement(std::uint64_t seed, std::size_t cases) {
  Rng rng(seed);
  Failure fail;
  for (std::size_t c = 0; c < cases; ++c) {
    const auto real_ids = id_range("x", 3 + rng.below(4));
    std::vector<Realization> sample;
    for (const auto& xid : real_ids) sample.push_back(synthetic_realization(xid));

    const Rulebook before = random_class_rulebook(rng, real_ids);
    Rulebook current = before;
    bool augmented = false;

    const std::size_t n_ops = 1 + rng.below(4);
    for (std::size_t op = 0; op < n_ops; ++op) {
      const std::size_t kind = rng.below(3);
      if (kind == 0) {
        // legal refinement: any pair not already strictly ordered the other way
        const auto ids = current.rule_ids();
        for (std::size_t attempt = 0; attempt < 12; ++attempt) {
          const auto& lower = ids[rng.below(ids.size())];
          const auto& higher = ids[rng.below(ids.size())];
          if (lower == higher || current.order().lt(higher, lower)) continue;
          current = priority_refine(current, lower, higher);
          break;
        }
      } else if (kind == 1) {
        auto classes = current.order().equivalence_classes();
        std::vector<std::vector<std::string>> big;
        for (auto& cls : classes) {
          if (cls.size() >= 2) big.push_back(cls);
        }
        if (big.empty()) continue;
        const auto& cls = big[rng.below(big.size())];
        LinearAggregator lin;
        for (const auto& rid : cls) {
          lin.weights.emplace_back(rid, static_cast<double>(1 + rng.below(3)));
        }
        current = aggregate(current, cls, "agg" + std::to_string(op), lin, {});
      } else {
        std::map<std::string, double> table;
        for (const auto& xid : real_ids) table[xid] = static_cast<double>(rng.below(4));
        current = augment(current, table_rule("aug" + std::to_string(op), std::move(table)));
        augmented = true;
      }
    }

    const RefinementCertificate cert = certify_strict_refinement(before, current, sample);
    if (!cert.strict_preserved) fail.record(c, "strict preservation broken");
    if (!augmented && !cert.full_preserved) fail.record(c, "full preservation broken");
  }
  return SuiteResult{"refinement theorems", cases, fail.count, fail.first};
}

// ------------------------------------------------------------------ format --

RulebookDoc random_doc(Rng& rng) {
  RulebookDoc doc;
  doc.name = "fuzz";
  const double eps_pool[] = {0.0, 0.5, 1e-9, 2.0, 0.125};
  doc.epsilon = eps_pool[rng.below(5)];

  const std::size_t n_rules = 1 + rng.below(6);
  const char* kinds[] = {"table", "blockage", "turning", "clearance"};
  for (std::size_t r = 0; r < n_rules; ++r) {
    RuleDecl decl;
    decl.id = "r" + std::to_string(r);
    decl.kind = kinds[rng.below(4)];
    const std::size_t n_params = rng.below(4);
    for (std::size_t p = 0; p < n_params; ++p) {
      decl.params.emplace_back("p" + std::to_string(p),
                               static_cast<double>(rng.below(1000)) / 8.0);
    }
    doc.rules.push_back(std::move(decl));
  }

  std::vector<std::vector<std::string>> classes;
  for (const auto& r : doc.rules) {
    if (classes.empty() || rng.chance(0.5)) {
      classes.push_back({r.id});
    } else {
      classes[rng.below(classes.size())].push_back(r.id);
    }
  }
  for (const auto& cls : classes) {
    if (cls.size() >= 2) doc.groups.push_back(cls);
  }
  std::sort(doc.groups.begin(), doc.groups.end());

  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      if (rng.chance(0.4)) {
        doc.priorities.emplace_back(classes[i][rng.below(classes[i].size())],
                                    classes[j][rng.below(classes[j].size())]);
      }
    }
    if (classes[i].size() >= 2 && rng.chance(0.5)) {
      doc.priorities.emplace_back(classes[i][0], classes[i][1]);
    }
  }
  std::sort(doc.priorities.begin(), doc.priorities.end());
  doc.priorities.erase(std::unique(doc.priorities.begin(), doc.priorities.end()),
                       doc.priorities.end());

  std::size_t agg_no = 0;
  for (const auto& cls : classes) {
    if (cls.size() < 2 || !rng.chance(0.4)) continue;
    AggregateDecl agg;
    agg.id = "agg" + std::to_string(agg_no++);
    for (const auto& rid : cls) {
      if (rng.chance(0.7)) {
        agg.weights.emplace_back(rid, 1.0 + static_cast<double>(rng.below(16)) / 4.0);
      }
    }
    if (agg.weights.empty()) agg.weights.emplace_back(cls[0], 2.0);
    doc.aggregates.push_back(std::move(agg));
  }
  return doc;
}

SuiteResult run_format(std::uint64_t seed, std::size_t cases) {
  Rng rng(seed);
  Failure fail;
  for (std::size_t c = 0; c < cases; ++c) {
    const RulebookDoc doc = random_doc(rng);
    const std::string text = serialize_rulebook(doc);
    try {
      const RulebookDoc back = parse_rulebook(text);
      if (!(back == doc)) {
        fail.record(c, "round trip changed the document");
      } else if (serialize_rulebook(back) != text) {
        fail.record(c, "reserialization not byte-stable");
      }
    } catch (const Error& e) {
      fail.record(c, std::string("round trip raised: ") + e.what());
    }
  }
  return SuiteResult{"format round-trip", cases, fail.count, fail.first};
}

}  // namespace

SuiteResult preorder_axioms(std::uint64_t seed, std::size_t cases) {
  return run_preorder(seed, cases);
}

SuiteResult refinement_theorems(std::uint64_t seed, std::size_t cases) {
  return run_refinement(seed, cases);
}

SuiteResult format_round_trip(std::uint64_t seed, std::size_t cases) {
  return run_format(seed, cases);
}

std::vector<SuiteResult> run_all(std::uint64_t seed) {
  return {preorder_axioms(seed, 10000), refinement_theorems(seed ^ 0x5bd1e995u, 2000),
          format_round_trip(seed + 2, 500)};
}

}  // namespace rbk::selftest
