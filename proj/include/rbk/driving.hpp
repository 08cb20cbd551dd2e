#pragma once

#include <map>
#include <string>

#include "rbk/realization.hpp"
#include "rbk/rulebook.hpp"

namespace rbk {

// Outcome of braking along the candidate path at maximum deceleration.
// `speed` is the ego speed at first footprint contact, 0 when the ego
// stops (or exhausts its path) before touching anything.
enum class Fault { none, ego_at_fault, third_party };

std::string to_string(Fault f);

struct BrakingOutcome {
  bool contact = false;
  double time = 0.0;
  double speed = 0.0;
  Fault fault = Fault::none;
  std::string entity;  // obstacle index or agent trajectory id
};

BrakingOutcome braking_contact(const Realization& x, const DrivingParams& p);

// Rule metrics. All return values in [0, +inf); units noted per rule.
double rule_blockage(const Realization& x, const DrivingParams& p);
double rule_lane_keeping(const Realization& x, const DrivingParams& p);
double rule_clearance(const Realization& x, const DrivingParams& p);
double rule_path_length(const Realization& x);
double rule_speed_limit(const Realization& x, const DrivingParams& p);
double rule_speed_limit_weighted(const Realization& x, const DrivingParams& p);
double rule_collision_speed(const Realization& x, const DrivingParams& p);
double rule_collision_at_fault(const Realization& x, const DrivingParams& p);
double rule_collision_third_party(const Realization& x, const DrivingParams& p);
double rule_lane_change_near_intersection(const Realization& x, const DrivingParams& p);
double rule_turning(const Realization& x, const DrivingParams& p);
double rule_kinetic_energy(const Realization& x, const DrivingParams& p);

bool is_builtin_kind(const std::string& kind);

// Builds a Rule for a builtin kind. `rule_params` carries per-rule settings:
// the id->value map for kind "table", and weighted:1 for kind "speed_limit".
Rule make_driving_rule(const std::string& id, const std::string& kind,
                       const DrivingParams& p,
                       const std::map<std::string, double>& rule_params = {});

}  // namespace rbk
