#pragma once

#include <string>

#include "rbk/planner.hpp"
#include "rbk/scenario.hpp"

namespace rbk {

/// Report writers. All output is deterministic: identical inputs produce
/// byte-identical strings, independent of locale.
std::string render_text(const RankingReport& report);

/// One `candidate,rule,value` row per profile entry.
std::string render_csv(const RankingReport& report);

std::string render_json_report(const RankingReport& report);

/// Top-down view, 20 px per meter: lanes, intersections, obstacles, agent
/// start boxes, and one <path> per candidate; the selected candidate carries
/// class="selected".
std::string render_svg(const ScenarioDoc& scenario, const RankingReport& report);

}  // namespace rbk
