#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rbk/planner.hpp"
#include "rbk/realization.hpp"

namespace rbk {

/// A world plus candidate ego trajectories, as loaded from a scenario file.
struct ScenarioDoc {
  DrivingParams params;
  FootprintSpec ego_footprint{4.4, 1.8};
  std::shared_ptr<const World> world;
  std::vector<Trajectory> candidates;

  CandidateSet candidate_set() const;  // realizations sharing the world
};

/// Parses and validates "rbk-scenario/1" JSON. JSON syntax errors throw
/// ParseError with line/column; schema problems throw SemanticError with a
/// /path/to/field diagnostic; geometry violations name the offending object.
ScenarioDoc parse_scenario(const std::string& text);

}  // namespace rbk
