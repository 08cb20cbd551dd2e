#pragma once

#include <string>
#include <vector>

#include "rbk/planner.hpp"
#include "rbk/scenario.hpp"

namespace rbk {

/// One rulebook applied to the demo scenario, with its full ranking.
struct DemoVariant {
  std::string rulebook_fixture;  // embedded file name the rulebook came from
  Rulebook rulebook;
  RankingReport report;
  std::string selected;
};

struct DemoResult {
  std::string name;
  ScenarioDoc scenario;
  std::vector<DemoVariant> variants;
};

std::vector<std::string> demo_names();

/// Runs a built-in experiment (collision, lanechange, overtake) on embedded
/// fixtures: the same scenario ranked under two rulebook variants.
DemoResult run_demo(const std::string& name);

}  // namespace rbk
