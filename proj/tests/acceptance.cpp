// Release gate. Each numbered check prints exactly one PASS/FAIL line and the
// process exits nonzero if any of them fail. Checks with a hard time budget
// fail when they blow it, even if the result itself was right.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rbk/bind.hpp"
#include "rbk/demos.hpp"
#include "rbk/dsl.hpp"
#include "rbk/fixtures.hpp"
#include "rbk/ops.hpp"
#include "rbk/planner.hpp"
#include "rbk/realization.hpp"
#include "rbk/rulebook.hpp"
#include "rbk/scenario.hpp"
#include "rbk/selftest.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

rbk::Rulebook load_book(const std::string& fixture) {
  return rbk::bind_rulebook(rbk::parse_rulebook(rbk::fixtures::get(fixture)), rbk::DrivingParams{});
}

rbk::CandidateSet abcd() {
  rbk::CandidateSet cs;
  for (const char* id : {"a", "b", "c", "d"}) {
    cs.realizations.push_back(rbk::synthetic_realization(id));
  }
  return cs;
}

const rbk::DemoVariant& variant(const rbk::DemoResult& d, const std::string& fixture) {
  for (const auto& v : d.variants) {
    if (v.rulebook_fixture == fixture) return v;
  }
  throw std::runtime_error("demo '" + d.name + "' has no variant from " + fixture);
}

double value_of(const rbk::RankingReport& r, const std::string& id, const std::string& rule) {
  for (std::size_t i = 0; i < r.ids.size(); ++i) {
    if (r.ids[i] == id) return r.profiles[i].value(rule);
  }
  throw std::runtime_error("no candidate '" + id + "' in report");
}

char verdict_char(rbk::Verdict v) {
  switch (v) {
    case rbk::Verdict::less_than: return '<';
    case rbk::Verdict::greater_than: return '>';
    case rbk::Verdict::equivalent: return '=';
    case rbk::Verdict::incomparable: return '#';
  }
  return '?';
}

Outcome criterion1() {
  Outcome o;
  auto report = rbk::rank(load_book("example3.rbk"), abcd());
  o.require(report.ids == std::vector<std::string>{"a", "b", "c", "d"}, "unexpected candidate ids");

  const std::vector<std::string> want = {"=>>>", "<=##", "<#=<", "<#>="};
  for (std::size_t i = 0; i < report.verdicts.size() && o.ok; ++i) {
    std::string row;
    for (auto v : report.verdicts[i]) row += verdict_char(v);
    o.require(row == want[i], "verdict row " + report.ids[i] + " is '" + row + "', wanted '" +
                                  want[i] + "'");
  }
  o.require(report.minimal == std::vector<std::string>{"b", "c"}, "minimal set is not {b, c}");
  o.require(report.minimal_all == std::vector<std::string>{"b", "c"},
            "minimal classes contain unexpected ties");
  o.require(!report.total_order.has_value(), "partial book reported a total order");
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto kl = rbk::rank(load_book("example3_chain_kl.rbk"), abcd());
  o.require(kl.total_order.has_value(), "first chain produced no total order");
  if (kl.total_order) {
    o.require(*kl.total_order == std::vector<std::string>{"b", "c", "d", "a"},
              "first chain ordered candidates differently");
  }
  auto lk = rbk::rank(load_book("example3_chain_lk.rbk"), abcd());
  o.require(lk.total_order.has_value(), "second chain produced no total order");
  if (lk.total_order) {
    o.require(*lk.total_order == std::vector<std::string>{"c", "d", "b", "a"},
              "second chain ordered candidates differently");
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  // Braking from 9.5 m/s at 3.5 m/s^2 needs 12.89 m but only 12 m are free,
  // so both candidates must collide with something.
  o.require(9.5 * 9.5 / (2.0 * 3.5) > 12.0, "stopping distance fits inside the gap");

  auto demo = rbk::run_demo("collision");
  const auto& mu = variant(demo, "collision_mu.rbk");
  const auto& split = variant(demo, "collision_mu12.rbk");
  o.require(value_of(mu.report, "inlane", "mu") > 0.0, "in-lane candidate shows no collision");
  o.require(value_of(mu.report, "swerve", "mu") > 0.0, "swerve candidate shows no collision");
  o.require(mu.selected == "swerve",
            "single-cost book selected '" + mu.selected + "', expected the swerve");
  o.require(split.selected == "inlane",
            "fault-split book selected '" + split.selected + "', expected in-lane");
  return o;
}

Outcome criterion4() {
  Outcome o;
  auto demo = rbk::run_demo("overtake");
  const auto& clearance_first = variant(demo, "overtake_r1.rbk");
  const auto& lane_first = variant(demo, "overtake_r2.rbk");
  o.require(clearance_first.selected == "c",
            "clearance-first book selected '" + clearance_first.selected + "'");
  o.require(lane_first.selected == "b", "lane-keeping-first book selected '" +
                                            lane_first.selected + "'");
  // The two winners really differ in kind: c leaves the lane, b stays inside.
  o.require(value_of(clearance_first.report, "c", "lambda") > 0.0,
            "the clearance-first winner never left its lane");
  o.require(value_of(clearance_first.report, "b", "lambda") == 0.0,
            "the lane-keeping-first winner left its lane");
  return o;
}

Outcome criterion5() {
  Outcome o;
  auto demo = rbk::run_demo("lanechange");
  const auto& plain = variant(demo, "lanechange_ct0.rbk");
  const auto& surcharged = variant(demo, "lanechange_ct.rbk");
  o.require(plain.selected != surcharged.selected,
            "turning surcharge did not change the selection");
  double zeta_plain = value_of(plain.report, plain.selected, "zeta");
  double zeta_other = value_of(plain.report, surcharged.selected, "zeta");
  o.require(zeta_plain < zeta_other,
            "the surcharge-free pick does not cross strictly earlier");
  return o;
}

Outcome criterion6() {
  Outcome o;
  auto suite = rbk::selftest::preorder_axioms(20260815ull, 10000);
  o.require(suite.cases == 10000, "suite ran a different case count");
  o.require(suite.failures == 0, suite.first_failure);
  return o;
}

Outcome criterion7() {
  Outcome o;
  auto suite = rbk::selftest::refinement_theorems(0x5eedull, 2000);
  o.require(suite.cases == 2000, "suite ran a different case count");
  o.require(suite.failures == 0, suite.first_failure);

  // The shipped tie-break pair: adding a lowest rule keeps every strict
  // verdict but drops the a ~ b equivalence, so only the strict level holds.
  auto cs = abcd();
  auto cert = rbk::certify_strict_refinement(load_book("augment_before.rbk"),
                                             load_book("augment_after.rbk"), cs.realizations);
  o.require(cert.strict_preserved, "tie-break augmentation lost a strict verdict");
  o.require(!cert.full_preserved, "tie-break augmentation kept the full order");
  return o;
}

Outcome criterion8() {
  Outcome o;
  auto demos = rbk::forbidden_op_demos();
  o.require(demos.size() == 3, "expected three forbidden-edit demos");
  for (const auto& demo : demos) {
    o.require(!demo.certificate.strict_preserved,
              "demo '" + demo.name + "' did not break strict refinement");
    o.require(demo.certificate.first_violation.has_value(),
              "demo '" + demo.name + "' carries no counterexample");
    if (!demo.certificate.first_violation) continue;
    const auto& v = *demo.certificate.first_violation;
    o.require(v.strict_level, "demo '" + demo.name + "' counterexample is not strict-level");

    // Re-run the cited pair from scratch under both books.
    auto find = [&](const std::string& id) -> const rbk::Realization& {
      for (const auto& r : demo.sample) {
        if (r.id() == id) return r;
      }
      throw std::runtime_error("demo '" + demo.name + "' sample lacks '" + id + "'");
    };
    auto before = rbk::compare(demo.before, rbk::profile(demo.before, find(v.x)),
                               rbk::profile(demo.before, find(v.y)));
    auto after = rbk::compare(demo.after, rbk::profile(demo.after, find(v.x)),
                              rbk::profile(demo.after, find(v.y)));
    o.require(before == rbk::Verdict::less_than,
              "demo '" + demo.name + "' pair was not strict beforehand");
    o.require(before == v.before && after == v.after,
              "demo '" + demo.name + "' counterexample does not re-validate");
    o.require(after != rbk::Verdict::less_than,
              "demo '" + demo.name + "' pair is still strict afterwards");
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(0xa66e5ull);
  for (int iter = 0; iter < 200 && o.ok; ++iter) {
    std::size_t width = 1 + rng() % 4;
    std::vector<std::string> ids;
    rbk::LinearAggregator lin;
    for (std::size_t i = 0; i < width; ++i) {
      ids.push_back("r" + std::to_string(i));
      lin.weights.emplace_back(ids.back(), 0.5 + static_cast<double>(rng() % 6) / 2.0);
    }
    std::vector<std::vector<double>> sample(2 + rng() % 5);
    for (auto& tuple : sample) {
      for (std::size_t i = 0; i < width; ++i) {
        tuple.push_back(static_cast<double>(rng() % 7) / 2.0);
      }
    }
    auto check = rbk::validate_aggregator(lin, ids, sample);
    o.require(check.ok,
              "positive linear combination rejected on iteration " + std::to_string(iter) +
                  ": " + check.reason);
  }

  const std::vector<std::string> ids = {"u", "v"};
  const std::vector<std::vector<double>> merging = {{0.0, 2.0}, {1.0, 2.0}};
  auto bad = rbk::validate_aggregator(rbk::MaxAggregator{}, ids, merging);
  o.require(!bad.ok, "componentwise max passed the merging sample");
  o.require(bad.tuple_low == std::vector<double>{0.0, 2.0} &&
                bad.tuple_high == std::vector<double>{1.0, 2.0},
            "max rejection cited a different pair");
  return o;
}

Outcome criterion10() {
  Outcome o;
  auto suite = rbk::selftest::format_round_trip(7ull, 500);
  o.require(suite.cases == 500, "suite ran a different case count");
  o.require(suite.failures == 0, suite.first_failure);

  std::size_t parsed = 0;
  for (const auto& [name, text] : rbk::fixtures::all()) {
    try {
      if (name.ends_with(".rbk")) {
        rbk::parse_rulebook(text);
      } else {
        rbk::parse_scenario(text);
      }
      ++parsed;
    } catch (const std::exception& e) {
      o.require(false, "fixture " + name + " failed to parse: " + e.what());
    }
  }
  o.require(parsed == rbk::fixtures::all().size() && parsed >= 15,
            "fixture inventory looks incomplete");
  return o;
}

struct Check {
  int number;
  const char* what;
  std::function<Outcome()> fn;
  long budget_ms;  // 0 = unbounded
};

}  // namespace

int main() {
  const std::vector<Check> checks = {
      {1, "four-candidate verdict matrix and minimal set are exact", criterion1, 1000},
      {2, "both priority chains yield their expected total orders", criterion2, 0},
      {3, "collision demo: impact unavoidable, cost books split swerve vs in-lane", criterion3,
       5000},
      {4, "overtake demo: clearance-first crosses the boundary, lane-keeping-first stays",
       criterion4, 0},
      {5, "lane-change demo: turning surcharge flips the pick toward the later crossing",
       criterion5, 0},
      {6, "preorder axioms hold on 10000 random instances", criterion6, 60000},
      {7, "refinement certificates hold on 2000 random edit sequences", criterion7, 120000},
      {8, "every forbidden edit fails certification with a re-validating pair", criterion8, 0},
      {9, "linear aggregation validates, componentwise max is rejected exactly", criterion9, 0},
      {10, "fuzzed docs round-trip and all shipped fixtures parse", criterion10, 0},
  };

  int failed = 0;
  for (const auto& check : checks) {
    auto start = Clock::now();
    Outcome o;
    try {
      o = check.fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    if (o.ok && check.budget_ms > 0 && ms >= check.budget_ms) {
      o.ok = false;
      o.detail = "exceeded the " + std::to_string(check.budget_ms) + " ms budget";
    }
    std::cout << "criterion " << check.number << ": " << (o.ok ? "PASS" : "FAIL") << " "
              << check.what;
    if (!o.ok) std::cout << " [" << o.detail << "]";
    std::cout << " (" << ms << " ms)\n";
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
