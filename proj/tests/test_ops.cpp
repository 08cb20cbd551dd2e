#include "rbk/ops.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "rbk/error.hpp"
#include "test_util.hpp"

using namespace rbk;

namespace {

using Values = std::map<std::string, std::map<std::string, double>>;

Rulebook make_rulebook(const Values& values,
                       std::vector<std::pair<std::string, std::string>> edges,
                       double eps = 0.0) {
  std::vector<Rule> rules;
  std::vector<std::string> ids;
  for (const auto& [rule_id, table] : values) {
    rules.push_back(table_rule(rule_id, table));
    ids.push_back(rule_id);
  }
  return Rulebook(std::move(rules), Preorder(ids, std::move(edges)), eps);
}

std::vector<Realization> synth(const std::vector<std::string>& ids) {
  std::vector<Realization> out;
  for (const auto& id : ids) out.push_back(synthetic_realization(id));
  return out;
}

const Values kAvoidance = {
    {"alpha", {{"a", 1}, {"b", 2}, {"c", 3}, {"d", 4}}},
    {"beta", {{"a", 1}, {"b", 0}, {"c", 0}, {"d", 0}}},
    {"kappa", {{"a", 1}, {"b", 1}, {"c", 0}, {"d", 0}}},
    {"lambda", {{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}}},
};
const std::vector<std::pair<std::string, std::string>> kPartialEdges = {
    {"alpha", "kappa"}, {"alpha", "lambda"}, {"kappa", "beta"}, {"lambda", "beta"}};

}  // namespace

TEST_CASE("priority refinement adds a relation and certifies cleanly") {
  Rulebook rb = make_rulebook(kAvoidance, kPartialEdges);
  Rulebook refined = priority_refine(rb, "kappa", "lambda");
  CHECK(refined.order().lt("kappa", "lambda"));
  CHECK(refined.order().is_chain());
  CHECK(refines(rb.order(), refined.order()));

  auto cert = certify_strict_refinement(rb, refined, synth({"a", "b", "c", "d"}),
                                        refine_record(rb, "kappa", "lambda"));
  CHECK(cert.strict_preserved);
  CHECK(cert.full_preserved);
  CHECK_FALSE(cert.first_violation.has_value());
  CHECK(cert.operation.id_map.at("kappa") == "kappa");
}

TEST_CASE("priority refinement rejects reversing a strict pair") {
  Rulebook rb = make_rulebook(kAvoidance, kPartialEdges);
  CHECK_THROWS_AS((void)priority_refine(rb, "beta", "alpha"), SemanticError);
  CHECK_THROWS_AS((void)priority_refine(rb, "alpha", "missing"), SemanticError);
  // adding an already-implied relation is a no-op refinement, not an error
  Rulebook same = priority_refine(rb, "alpha", "beta");
  CHECK(same.order().lt("alpha", "beta"));
}

TEST_CASE("max aggregator is rejected with the exact violating pair") {
  const std::vector<std::string> ids = {"r1", "r2"};
  const std::vector<std::vector<double>> sample = {{0.0, 2.0}, {1.0, 2.0}};
  auto check = validate_aggregator(MaxAggregator{}, ids, sample);
  REQUIRE_FALSE(check.ok);
  CHECK(check.tuple_low == std::vector<double>{0.0, 2.0});
  CHECK(check.tuple_high == std::vector<double>{1.0, 2.0});
}

TEST_CASE("positive linear aggregators pass fuzzed samples") {
  TestRng rng(0x11EA);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t arity = 1 + rng.below(4);
    std::vector<std::string> ids;
    LinearAggregator lin;
    for (std::size_t i = 0; i < arity; ++i) {
      ids.push_back("r" + std::to_string(i));
      lin.weights.emplace_back(ids.back(), 1.0 + static_cast<double>(rng.below(3)));
    }
    std::vector<std::vector<double>> sample;
    const std::size_t count = 2 + rng.below(7);
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<double> tuple;
      for (std::size_t k = 0; k < arity; ++k) tuple.push_back(static_cast<double>(rng.below(4)));
      sample.push_back(std::move(tuple));
    }
    INFO("iter ", iter);
    CHECK(validate_aggregator(lin, ids, sample).ok);
  }
}

TEST_CASE("non-positive weights and undeclared custom maps are rejected") {
  const std::vector<std::string> ids = {"r"};
  const std::vector<std::vector<double>> sample = {{1.0}};
  CHECK_FALSE(validate_aggregator(LinearAggregator{{{"r", 0.0}}}, ids, sample).ok);
  CHECK_FALSE(validate_aggregator(LinearAggregator{{{"r", -2.0}}}, ids, sample).ok);
  CustomAggregator undeclared{"sum", [](std::span<const double> v) { return v[0]; }, false};
  CHECK_FALSE(validate_aggregator(undeclared, ids, sample).ok);
  CustomAggregator declared{"sum", [](std::span<const double> v) { return v[0]; }, true};
  CHECK(validate_aggregator(declared, ids, sample).ok);
}

TEST_CASE("aggregate collapses an equivalence class and re-parents relations") {
  // zeta ~ tau, both below beta
  Values values = {
      {"beta", {{"x", 0}, {"y", 0}}},
      {"zeta", {{"x", 3}, {"y", 1}}},
      {"tau", {{"x", 0}, {"y", 1}}},
  };
  Rulebook rb = make_rulebook(values, {{"zeta", "tau"}, {"tau", "zeta"}, {"zeta", "beta"}});
  auto xs = synth({"x", "y"});
  std::vector<ViolationProfile> sample = {profile(rb, xs[0]), profile(rb, xs[1])};

  Rulebook agg = aggregate(rb, {"zeta", "tau"}, "r_zt", LinearAggregator{{{"zeta", 1.0}, {"tau", 2.0}}},
                           sample);
  CHECK(agg.rule_ids() == std::vector<std::string>{"beta", "r_zt"});
  CHECK(agg.order().lt("r_zt", "beta"));
  auto p = profile(agg, xs[0]);
  CHECK(p.value("r_zt") == 3.0);  // 1*3 + 2*0
  CHECK(profile(agg, xs[1]).value("r_zt") == 3.0);  // 1*1 + 2*1

  auto rec = aggregate_record(rb, {"zeta", "tau"}, "r_zt");
  CHECK(rec.id_map.at("zeta") == "r_zt");
  CHECK(rec.id_map.at("tau") == "r_zt");
  CHECK(rec.id_map.at("beta") == "beta");

  auto cert = certify_strict_refinement(rb, agg, xs, rec);
  CHECK(cert.strict_preserved);
  CHECK(cert.full_preserved);
}

TEST_CASE("aggregate preconditions") {
  Rulebook rb = make_rulebook(kAvoidance, kPartialEdges);
  auto xs = synth({"a", "b"});
  std::vector<ViolationProfile> sample = {profile(rb, xs[0]), profile(rb, xs[1])};
  // kappa and lambda are incomparable, not equivalent
  CHECK_THROWS_AS((void)aggregate(rb, {"kappa", "lambda"}, "k", LinearAggregator{{{"kappa", 1.0}, {"lambda", 1.0}}}, sample),
                  SemanticError);
  // existing id
  CHECK_THROWS_AS((void)aggregate(rb, {"kappa"}, "beta", LinearAggregator{{{"kappa", 1.0}}}, sample),
                  SemanticError);
  // aggregator failing validation names the pair
  Values flat = {{"r1", {{"x", 0}, {"y", 1}}}, {"r2", {{"x", 2}, {"y", 2}}}};
  Rulebook rb2 = make_rulebook(flat, {{"r1", "r2"}, {"r2", "r1"}});
  auto xy = synth({"x", "y"});
  std::vector<ViolationProfile> s2 = {profile(rb2, xy[0]), profile(rb2, xy[1])};
  CHECK_THROWS_WITH_AS((void)aggregate(rb2, {"r1", "r2"}, "m", MaxAggregator{}, s2),
                       doctest::Contains("order violation"), SemanticError);
}

TEST_CASE("augment adds a strictly lowest rule and keeps strict pairs") {
  Values values = {{"r", {{"x", 1}, {"y", 1}, {"z", 0}}}};
  Rulebook rb = make_rulebook(values, {});
  Rulebook aug = augment(rb, table_rule("tie_break", {{"x", 0}, {"y", 1}, {"z", 5}}));
  for (const auto& id : rb.order().elements()) {
    CHECK(aug.order().lt("tie_break", id));
  }
  CHECK_THROWS_AS((void)augment(rb, table_rule("r", {})), SemanticError);

  auto xs = synth({"x", "y", "z"});
  auto cert = certify_strict_refinement(rb, aug, xs, augment_record(rb, "tie_break"));
  // x ~ y before, split by the new rule: strict survives, full does not.
  CHECK(cert.strict_preserved);
  CHECK_FALSE(cert.full_preserved);
  REQUIRE(cert.first_violation.has_value());
  CHECK_FALSE(cert.first_violation->strict_level);
  CHECK(cert.first_violation->before == Verdict::equivalent);

  auto pb_x = profile(rb, xs[0]);
  auto pb_y = profile(rb, xs[1]);
  auto pa_x = profile(aug, xs[0]);
  auto pa_y = profile(aug, xs[1]);
  CHECK(compare(rb, pb_x, pb_y) == Verdict::equivalent);
  CHECK(compare(aug, pa_x, pa_y) == Verdict::less_than);
  // the strict pair z < x stays strict
  CHECK(compare(aug, profile(aug, xs[2]), pa_x) == Verdict::less_than);
}

TEST_CASE("every forbidden demo breaks strict refinement and re-validates") {
  auto demos = forbidden_op_demos();
  REQUIRE(demos.size() == 3);
  std::set<std::string> names;
  for (const auto& demo : demos) {
    names.insert(demo.name);
    CHECK_FALSE(demo.certificate.strict_preserved);
    REQUIRE(demo.certificate.first_violation.has_value());
    const auto& v = *demo.certificate.first_violation;
    // Re-run the comparison fresh on the cited pair under both rulebooks.
    auto find = [&](const std::string& id) {
      return *std::find_if(demo.sample.begin(), demo.sample.end(),
                           [&](const Realization& r) { return r.id() == id; });
    };
    auto before_x = profile(demo.before, find(v.x));
    auto before_y = profile(demo.before, find(v.y));
    auto after_x = profile(demo.after, find(v.x));
    auto after_y = profile(demo.after, find(v.y));
    CHECK(compare(demo.before, before_x, before_y) == Verdict::less_than);
    CHECK(compare(demo.after, after_x, after_y) != Verdict::less_than);
    CHECK(compare(demo.after, after_x, after_y) == v.after);
  }
  CHECK(names == std::set<std::string>{"top", "middle", "incomparable"});
  // the incomparable demo specifically degrades to undecided
  for (const auto& demo : demos) {
    if (demo.name == "incomparable") {
      CHECK(demo.certificate.first_violation->after == Verdict::incomparable);
    }
    if (demo.name == "top") {
      CHECK(demo.certificate.first_violation->after == Verdict::greater_than);
    }
  }
}

namespace {

struct SequenceOutcome {
  Rulebook final;
  bool used_augment = false;
};

SequenceOutcome random_op_sequence(TestRng& rng, Rulebook rb,
                                   const std::vector<Realization>& xs, int max_ops) {
  SequenceOutcome out{rb, false};
  int fresh = 0;
  const int n_ops = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_ops)));
  for (int k = 0; k < n_ops; ++k) {
    const auto ids = out.final.rule_ids();
    switch (rng.below(3)) {
      case 0: {  // refine with a legal pair
        const auto& a = ids[rng.below(ids.size())];
        const auto& b = ids[rng.below(ids.size())];
        if (!out.final.order().lt(b, a)) {
          out.final = priority_refine(out.final, a, b);
        }
        break;
      }
      case 1: {  // aggregate one whole equivalence class
        auto classes = out.final.order().equivalence_classes();
        const auto& cls = classes[rng.below(classes.size())];
        LinearAggregator lin;
        for (const auto& id : cls) {
          lin.weights.emplace_back(id, 1.0 + static_cast<double>(rng.below(3)));
        }
        std::vector<ViolationProfile> sample;
        for (const auto& x : xs) sample.push_back(profile(out.final, x));
        out.final = aggregate(out.final, cls, "agg" + std::to_string(fresh++), lin, sample);
        break;
      }
      default: {  // augment with a fresh random table rule
        std::map<std::string, double> tbl;
        for (const auto& x : xs) tbl[x.id()] = static_cast<double>(rng.below(4));
        out.final = augment(out.final, table_rule("aug" + std::to_string(fresh++), tbl));
        out.used_augment = true;
        break;
      }
    }
  }
  return out;
}

Rulebook random_class_rulebook(TestRng& rng, std::size_t n_rules, std::size_t n_real) {
  Values values;
  std::vector<std::string> ids;
  for (std::size_t r = 0; r < n_rules; ++r) {
    ids.push_back("r" + std::to_string(r));
    auto& tbl = values[ids.back()];
    for (std::size_t x = 0; x < n_real; ++x) {
      tbl["x" + std::to_string(x)] = static_cast<double>(rng.below(4));
    }
  }
  // random partition into classes, random DAG across them
  std::vector<std::vector<std::string>> classes;
  for (const auto& id : ids) {
    if (classes.empty() || rng.chance(0.6)) {
      classes.push_back({id});
    } else {
      classes[rng.below(classes.size())].push_back(id);
    }
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto& cls : classes) {
    for (std::size_t i = 0; i + 1 < cls.size(); ++i) {
      edges.emplace_back(cls[i], cls[i + 1]);
      edges.emplace_back(cls[i + 1], cls[i]);
    }
  }
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      if (rng.chance(0.4)) edges.emplace_back(classes[i][0], classes[j][0]);
    }
  }
  return make_rulebook(values, std::move(edges));
}

}  // namespace

TEST_CASE("random operation sequences preserve the advertised order fragments") {
  TestRng rng(0x0B5);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n_rules = 1 + rng.below(4);
    const std::size_t n_real = 2 + rng.below(7);
    Rulebook rb = random_class_rulebook(rng, n_rules, n_real);
    std::vector<Realization> xs;
    for (std::size_t x = 0; x < n_real; ++x) {
      xs.push_back(synthetic_realization("x" + std::to_string(x)));
    }
    auto outcome = random_op_sequence(rng, rb, xs, 4);
    auto cert = certify_strict_refinement(rb, outcome.final, xs);
    INFO("iter ", iter);
    CHECK(cert.strict_preserved);
    if (!outcome.used_augment) CHECK(cert.full_preserved);
  }
}

TEST_CASE("augment only moves verdicts from equivalent to strict") {
  TestRng rng(0xA06);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n_rules = 1 + rng.below(4);
    const std::size_t n_real = 2 + rng.below(6);
    Rulebook rb = random_class_rulebook(rng, n_rules, n_real);
    std::map<std::string, double> tbl;
    std::vector<Realization> xs;
    for (std::size_t x = 0; x < n_real; ++x) {
      xs.push_back(synthetic_realization("x" + std::to_string(x)));
      tbl[xs.back().id()] = static_cast<double>(rng.below(4));
    }
    Rulebook aug = augment(rb, table_rule("aug", tbl));
    for (const auto& x : xs) {
      for (const auto& y : xs) {
        const Verdict before = compare(rb, profile(rb, x), profile(rb, y));
        const Verdict after = compare(aug, profile(aug, x), profile(aug, y));
        INFO("iter ", iter, " pair ", x.id(), " ", y.id());
        if (before == Verdict::equivalent) {
          CHECK(after != Verdict::incomparable);
        } else {
          CHECK(after == before);
        }
      }
    }
  }
}
