#include <string>

#include "doctest.h"
#include "rbk/demos.hpp"
#include "rbk/dsl.hpp"
#include "rbk/error.hpp"
#include "rbk/fixtures.hpp"
#include "rbk/scenario.hpp"

using namespace rbk;

namespace {

const ViolationProfile& profile_of(const DemoVariant& v, const std::string& id) {
  for (std::size_t i = 0; i < v.report.ids.size(); ++i) {
    if (v.report.ids[i] == id) return v.report.profiles[i];
  }
  REQUIRE(false);
  return v.report.profiles.front();
}

}  // namespace

TEST_CASE("every embedded fixture parses cleanly") {
  std::size_t rulebooks = 0;
  std::size_t scenarios = 0;
  for (const auto& [name, content] : fixtures::all()) {
    INFO(name);
    if (name.ends_with(".rbk")) {
      CHECK_NOTHROW((void)parse_rulebook(content));
      ++rulebooks;
    } else {
      CHECK_NOTHROW((void)parse_scenario(content));
      ++scenarios;
    }
  }
  CHECK(rulebooks == 12);
  CHECK(scenarios == 3);
}

TEST_CASE("collision experiment: undifferentiated cost swerves, fault-aware stays") {
  DemoResult demo = run_demo("collision");
  REQUIRE(demo.variants.size() == 2);
  const DemoVariant& mu = demo.variants[0];
  const DemoVariant& mu12 = demo.variants[1];

  // braking cannot stop within the gap, so both candidates collide
  const double mu_inlane = profile_of(mu, "inlane").value("mu");
  const double mu_swerve = profile_of(mu, "swerve").value("mu");
  CHECK(mu_inlane > 0.0);
  CHECK(mu_swerve > 0.0);
  CHECK(mu_inlane == doctest::Approx(4.1234).epsilon(0.02));
  CHECK(mu_swerve < mu_inlane);  // the swerve gains braking distance
  CHECK(mu.selected == "swerve");

  // in-lane impact is with a wrong-way vehicle, the swerve impact is caused
  // by leaving the lane
  CHECK(profile_of(mu12, "inlane").value("mu1") == 0.0);
  CHECK(profile_of(mu12, "inlane").value("mu2") > 0.0);
  CHECK(profile_of(mu12, "swerve").value("mu1") > 0.0);
  CHECK(profile_of(mu12, "swerve").value("mu2") == 0.0);
  CHECK(mu12.selected == "inlane");
}

TEST_CASE("overtake experiment: rule order decides between wide and close pass") {
  DemoResult demo = run_demo("overtake");
  REQUIRE(demo.variants.size() == 2);
  const DemoVariant& clearance_first = demo.variants[0];
  const DemoVariant& lane_keeping_first = demo.variants[1];

  CHECK(clearance_first.selected == "c");
  CHECK(lane_keeping_first.selected == "b");

  const DemoVariant& v = clearance_first;
  CHECK(profile_of(v, "a").value("beta") == 1.0);
  CHECK(profile_of(v, "b").value("beta") == 0.0);
  CHECK(profile_of(v, "a").value("kappa") == doctest::Approx(1.0));
  CHECK(profile_of(v, "b").value("kappa") == doctest::Approx(0.65).epsilon(0.01));
  CHECK(profile_of(v, "c").value("kappa") == 0.0);
  CHECK(profile_of(v, "d").value("kappa") == 0.0);
  CHECK(profile_of(v, "a").value("lambda") == 0.0);
  CHECK(profile_of(v, "b").value("lambda") == 0.0);
  CHECK(profile_of(v, "c").value("lambda") == 1.0);
  CHECK(profile_of(v, "d").value("lambda") == 1.0);

  // lengths grow strictly from a through d
  double prev = 0.0;
  for (const std::string id : {"a", "b", "c", "d"}) {
    const double len = profile_of(v, id).value("alpha");
    CHECK(len > prev);
    prev = len;
  }
}

TEST_CASE("lane-change experiment: the turning weight flips the merge timing") {
  DemoResult demo = run_demo("lanechange");
  REQUIRE(demo.variants.size() == 2);
  const DemoVariant& timing_only = demo.variants[0];
  const DemoVariant& aggregated = demo.variants[1];

  CHECK(timing_only.selected == "early");
  CHECK(aggregated.selected == "late");

  // the early merge crosses far from the intersection, the late one 10 m short
  const double zeta_early = profile_of(timing_only, "early").value("zeta");
  const double zeta_late = profile_of(timing_only, "late").value("zeta");
  CHECK(zeta_early == 0.0);
  CHECK(zeta_late == doctest::Approx(20.0).epsilon(1e-6));
  CHECK(zeta_early < zeta_late);

  // aggregated cost = zeta + 150 * tau, and the early merge turns harder
  CHECK(aggregated.rulebook.rule_ids() == std::vector<std::string>{"beta", "cost"});
  const double cost_early = profile_of(aggregated, "early").value("cost");
  const double cost_late = profile_of(aggregated, "late").value("cost");
  const double tau_early = (cost_early - zeta_early) / 150.0;
  const double tau_late = (cost_late - zeta_late) / 150.0;
  CHECK(tau_early > tau_late);
  CHECK(cost_late < cost_early);
}

TEST_CASE("demo registry") {
  CHECK(demo_names() == std::vector<std::string>{"collision", "lanechange", "overtake"});
  CHECK_THROWS_WITH_AS((void)run_demo("parking"), doctest::Contains("unknown demo"),
                       SemanticError);
}
