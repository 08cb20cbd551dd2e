#include "rbk/demos.hpp"

#include "rbk/bind.hpp"
#include "rbk/dsl.hpp"
#include "rbk/error.hpp"
#include "rbk/fixtures.hpp"

namespace rbk {

namespace {

struct DemoSpec {
  const char* name;
  const char* scenario;
  const char* books[2];
};

constexpr DemoSpec kDemos[] = {
    {"collision", "collision.json", {"collision_mu.rbk", "collision_mu12.rbk"}},
    {"lanechange", "lanechange.json", {"lanechange_ct0.rbk", "lanechange_ct.rbk"}},
    {"overtake", "overtake.json", {"overtake_r1.rbk", "overtake_r2.rbk"}},
};

}  // namespace

std::vector<std::string> demo_names() {
  std::vector<std::string> names;
  for (const auto& spec : kDemos) names.emplace_back(spec.name);
  return names;
}

DemoResult run_demo(const std::string& name) {
  for (const auto& spec : kDemos) {
    if (name != spec.name) continue;
    DemoResult result;
    result.name = name;
    result.scenario = parse_scenario(fixtures::get(spec.scenario));
    const CandidateSet cs = result.scenario.candidate_set();
    for (const char* book : spec.books) {
      Rulebook rb = bind_rulebook(parse_rulebook(fixtures::get(book)), result.scenario.params);
      RankingReport report = rank(rb, cs);
      std::string selected = report.minimal.front();
      result.variants.push_back(
          DemoVariant{book, std::move(rb), std::move(report), std::move(selected)});
    }
    return result;
  }
  throw SemanticError("unknown demo '" + name +
                      "' (available: collision, lanechange, overtake)");
}

}  // namespace rbk
