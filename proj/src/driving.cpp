#include "rbk/driving.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rbk/error.hpp"
#include "rbk/geometry.hpp"

namespace rbk {

namespace {

// Inclusive time grid [t0, t1] at the configured sweep step. The exact end
// point is always present so contacts at the final pose are never missed.
std::vector<double> time_grid(double t0, double t1, double step) {
  std::vector<double> out;
  if (t1 < t0) return out;
  // i*step rather than accumulation: keeps grid points from drifting low,
  // which matters when a contact falls exactly on a grid time.
  for (std::size_t i = 0;; ++i) {
    const double t = t0 + static_cast<double>(i) * step;
    if (t >= t1) break;
    out.push_back(t);
  }
  out.push_back(t1);
  return out;
}

geo::OrientedBox footprint_box(const FootprintSpec& fp, geo::Vec2 center, double heading) {
  return {center, fp.length / 2.0, fp.width / 2.0, heading};
}

const Lane* active_lane(const Realization& x) {
  if (x.ego.samples.empty()) return nullptr;
  const auto& s0 = x.ego.samples.front();
  const int idx = x.world_ref().lane_index_at({s0.x, s0.y});
  return idx < 0 ? nullptr : &x.world_ref().lanes[static_cast<std::size_t>(idx)];
}

// Gap between the projections of two boxes onto a unit axis; 0 when the
// projected intervals overlap or touch.
double projected_gap(const geo::OrientedBox& a, const geo::OrientedBox& b, geo::Vec2 axis) {
  const auto [a_lo, a_hi] = a.project(axis);
  const auto [b_lo, b_hi] = b.project(axis);
  return std::max({0.0, b_lo - a_hi, a_lo - b_hi});
}

bool box_inside_polygon(const geo::OrientedBox& box, const geo::Polygon& poly) {
  for (const auto& c : box.corners()) {
    if (!poly.contains(c)) return false;
  }
  return true;
}

bool crosses_kind(BoundaryKind k) {
  return k == BoundaryKind::solid || k == BoundaryKind::double_solid;
}

bool box_hits_polyline(const geo::OrientedBox& box, const geo::Polyline& line) {
  for (std::size_t i = 0; i < line.segment_count(); ++i) {
    if (geo::box_intersects_segment(box, line.segment(i))) return true;
  }
  return false;
}

struct BrakingProfile {
  double v0 = 0.0;
  double a = 0.0;
  double t_end = 0.0;  // sim horizon: full stop or end of recorded path

  double s(double t) const { return v0 * t - 0.5 * a * t * t; }
  double v(double t) const { return std::max(0.0, v0 - a * t); }
};

BrakingProfile braking_profile(const Realization& x, const DrivingParams& p) {
  BrakingProfile prof;
  prof.v0 = x.ego.samples.front().speed;
  prof.a = p.a_max;
  if (prof.v0 <= 0.0) return prof;
  const double t_stop = prof.v0 / prof.a;
  const double path_len = x.ego.path().length();
  const double s_stop = prof.v0 * prof.v0 / (2.0 * prof.a);
  double t_exit = t_stop;
  if (s_stop > path_len) {
    const double disc = prof.v0 * prof.v0 - 2.0 * prof.a * path_len;
    t_exit = (prof.v0 - std::sqrt(std::max(0.0, disc))) / prof.a;
  }
  prof.t_end = std::min(t_stop, t_exit);
  return prof;
}

Fault classify_fault(const Realization& x, const DrivingParams& p,
                     const BrakingProfile& prof, const geo::Polyline& path,
                     double t_contact, bool is_agent, std::size_t agent_idx) {
  const Lane* lane = active_lane(x);
  if (lane == nullptr) return Fault::ego_at_fault;
  const geo::Polygon lane_poly = lane->polygon();

  const geo::OrientedBox ego_at_contact = footprint_box(
      x.ego_footprint, path.point_at(prof.s(t_contact)), path.heading_at(prof.s(t_contact)));
  if (!box_inside_polygon(ego_at_contact, lane_poly)) return Fault::ego_at_fault;

  for (double t : time_grid(0.0, t_contact, p.collision_step)) {
    const double s = prof.s(t);
    const geo::OrientedBox ego = footprint_box(x.ego_footprint, path.point_at(s), path.heading_at(s));
    if (crosses_kind(lane->left_kind) && box_hits_polyline(ego, lane->left)) {
      return Fault::ego_at_fault;
    }
    if (crosses_kind(lane->right_kind) && box_hits_polyline(ego, lane->right)) {
      return Fault::ego_at_fault;
    }
  }

  if (is_agent) {
    const Agent& agent = x.world_ref().agents[agent_idx];
    const Pose pose = agent.trajectory.pose_at(t_contact);
    const double nominal = lane->nominal_heading_at(pose.position);
    if (geo::dot(geo::unit_from_heading(pose.heading), geo::unit_from_heading(nominal)) < 0.0) {
      return Fault::third_party;  // struck agent moves against the lane direction
    }
    const Pose start = agent.trajectory.pose_at(agent.trajectory.start_time());
    if (lane_poly.contains(pose.position) && !lane_poly.contains(start.position)) {
      return Fault::third_party;  // struck agent intruded into the ego lane
    }
  }
  return Fault::ego_at_fault;
}

// Braking sweep against a configurable target set: all obstacles plus either
// every agent or a single one (used by the kinetic-energy rule).
BrakingOutcome simulate_braking(const Realization& x, const DrivingParams& p,
                                bool with_obstacles, int only_agent) {
  BrakingOutcome out;
  if (x.ego.samples.size() < 2) return out;
  const BrakingProfile prof = braking_profile(x, p);
  if (prof.v0 <= 0.0) return out;
  const geo::Polyline path = x.ego.path();
  const World& world = x.world_ref();

  for (double t : time_grid(0.0, prof.t_end, p.collision_step)) {
    const double s = prof.s(t);
    const geo::OrientedBox ego = footprint_box(x.ego_footprint, path.point_at(s), path.heading_at(s));
    if (with_obstacles) {
      for (std::size_t i = 0; i < world.obstacles.size(); ++i) {
        if (geo::boxes_overlap(ego, world.obstacles[i])) {
          out.contact = true;
          out.time = t;
          out.speed = prof.v(t);
          out.entity = "obstacle " + std::to_string(i);
          out.fault = classify_fault(x, p, prof, path, t, false, 0);
          return out;
        }
      }
    }
    for (std::size_t i = 0; i < world.agents.size(); ++i) {
      if (only_agent >= 0 && static_cast<std::size_t>(only_agent) != i) continue;
      if (geo::boxes_overlap(ego, world.agents[i].box_at(t))) {
        out.contact = true;
        out.time = t;
        out.speed = prof.v(t);
        out.entity = world.agents[i].trajectory.id;
        out.fault = classify_fault(x, p, prof, path, t, true, i);
        return out;
      }
    }
  }
  return out;
}

}  // namespace

std::string to_string(Fault f) {
  switch (f) {
    case Fault::ego_at_fault: return "ego-at-fault";
    case Fault::third_party: return "third-party";
    default: return "none";
  }
}

BrakingOutcome braking_contact(const Realization& x, const DrivingParams& p) {
  return simulate_braking(x, p, true, -1);
}

double rule_blockage(const Realization& x, const DrivingParams& p) {
  const World& world = x.world_ref();
  if (world.obstacles.empty() && world.agents.empty()) return 0.0;
  if (x.ego.samples.empty()) return 0.0;
  for (double t : time_grid(x.ego.start_time(), x.ego.end_time(), p.collision_step)) {
    const geo::OrientedBox ego = x.ego_box_at(t);
    for (const auto& obs : world.obstacles) {
      if (geo::boxes_overlap(ego, obs)) return 1.0;
    }
    for (const auto& agent : world.agents) {
      if (geo::boxes_overlap(ego, agent.box_at(t))) return 1.0;
    }
  }
  return 0.0;
}

double rule_lane_keeping(const Realization& x, const DrivingParams& p) {
  const Lane* lane = active_lane(x);
  if (lane == nullptr) {
    throw EvalError("lane keeping: ego does not start on any lane");
  }
  // Corner containment at sweep resolution; lanes are gently curved strips,
  // so a footprint leaving the lane always carries a corner outside.
  const geo::Polygon poly = lane->polygon();
  for (double t : time_grid(x.ego.start_time(), x.ego.end_time(), p.collision_step)) {
    if (!box_inside_polygon(x.ego_box_at(t), poly)) return 1.0;
  }
  return 0.0;
}

double rule_clearance(const Realization& x, const DrivingParams& p) {
  const World& world = x.world_ref();
  if (world.obstacles.empty() || x.ego.samples.empty()) return 0.0;
  const Lane* lane = active_lane(x);
  double min_gap = std::numeric_limits<double>::infinity();
  for (double t : time_grid(x.ego.start_time(), x.ego.end_time(), p.collision_step)) {
    const geo::OrientedBox ego = x.ego_box_at(t);
    const double along_heading =
        lane != nullptr ? lane->nominal_heading_at(ego.center) : ego.heading;
    const geo::Vec2 along = geo::unit_from_heading(along_heading);
    const geo::Vec2 lateral{-along.y, along.x};
    for (const auto& obs : world.obstacles) {
      // Lateral gap counts only while the footprints overlap longitudinally:
      // an obstacle dead ahead is a blockage concern, not a clearance one.
      if (projected_gap(ego, obs, along) > 0.0) continue;
      min_gap = std::min(min_gap, projected_gap(ego, obs, lateral));
    }
  }
  if (!std::isfinite(min_gap)) return 0.0;
  return std::max(0.0, p.c0 - min_gap);
}

double rule_path_length(const Realization& x) { return x.ego.length(); }

double rule_speed_limit(const Realization& x, const DrivingParams& p) {
  const auto& s = x.ego.samples;
  double above = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double dt = s[i + 1].t - s[i].t;
    const double v0 = s[i].speed;
    const double v1 = s[i + 1].speed;
    const double lim = p.speed_limit;
    if (v0 <= lim && v1 <= lim) continue;
    if (v0 > lim && v1 > lim) {
      above += dt;
      continue;
    }
    // one-sided exceedance: the speed profile is linear in t on the segment
    const double frac = (lim - v0) / (v1 - v0);
    above += v0 > lim ? frac * dt : (1.0 - frac) * dt;
  }
  return above;
}

double rule_speed_limit_weighted(const Realization& x, const DrivingParams& p) {
  const double above = rule_speed_limit(x, p);
  if (above <= 0.0) return 0.0;
  double v_max = 0.0;
  for (const auto& s : x.ego.samples) v_max = std::max(v_max, s.speed);
  return above * std::max(0.0, v_max - p.speed_limit);
}

double rule_collision_speed(const Realization& x, const DrivingParams& p) {
  return braking_contact(x, p).speed;
}

double rule_collision_at_fault(const Realization& x, const DrivingParams& p) {
  const BrakingOutcome out = braking_contact(x, p);
  return out.contact && out.fault == Fault::ego_at_fault ? out.speed : 0.0;
}

double rule_collision_third_party(const Realization& x, const DrivingParams& p) {
  const BrakingOutcome out = braking_contact(x, p);
  return out.contact && out.fault == Fault::third_party ? out.speed : 0.0;
}

double rule_lane_change_near_intersection(const Realization& x, const DrivingParams& p) {
  const Lane* lane = active_lane(x);
  if (lane == nullptr || x.ego.samples.size() < 2) return 0.0;
  const geo::Polyline path = x.ego.path();

  std::vector<geo::Vec2> crossings;
  auto collect = [&](const geo::Polyline& boundary) {
    for (std::size_t i = 0; i < path.segment_count(); ++i) {
      for (std::size_t j = 0; j < boundary.segment_count(); ++j) {
        geo::Vec2 pt;
        if (!geo::segment_intersection_point(path.segment(i), boundary.segment(j), &pt)) {
          continue;
        }
        // consecutive segments share endpoints; count the point once
        const bool seen = std::any_of(crossings.begin(), crossings.end(), [&](geo::Vec2 c) {
          return geo::distance(c, pt) < 1e-6;
        });
        if (!seen) crossings.push_back(pt);
      }
    }
  };
  collect(lane->left);
  collect(lane->right);

  if (crossings.empty()) return 0.0;
  if (crossings.size() > 1) {
    throw EvalError("lane change: trajectory crosses the lane boundary " +
                    std::to_string(crossings.size()) +
                    " times; this rule assumes a single crossing");
  }
  const World& world = x.world_ref();
  if (world.intersections.empty()) return 0.0;
  double d_int = std::numeric_limits<double>::infinity();
  for (const auto& region : world.intersections) {
    d_int = std::min(d_int, region.distance_to(crossings.front()));
  }
  return std::max(0.0, p.d_lc - d_int);
}

double rule_turning(const Realization& x, const DrivingParams&) {
  const Lane* lane = active_lane(x);
  if (lane == nullptr) return 0.0;
  const auto& s = x.ego.samples;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double nominal = lane->nominal_heading_at({s[i].x, s[i].y});
    total += std::abs(geo::angle_diff(s[i].heading, nominal)) * (s[i + 1].t - s[i].t);
  }
  return total;
}

double rule_kinetic_energy(const Realization& x, const DrivingParams& p) {
  const World& world = x.world_ref();
  double energy = 0.0;
  for (std::size_t i = 0; i < world.agents.size(); ++i) {
    if (world.agents[i].cls != AgentClass::human) continue;
    const BrakingOutcome out = simulate_braking(x, p, false, static_cast<int>(i));
    if (out.contact) energy += 0.5 * p.ego_mass * out.speed * out.speed;
  }
  return energy;
}

namespace {

const std::vector<std::string>& builtin_kinds() {
  static const std::vector<std::string> kinds = {
      "blockage",     "lane_keeping",
      "clearance",    "path_length",
      "speed_limit",  "collision",
      "collision_at_fault", "collision_third_party",
      "lane_change_near_intersection", "turning",
      "kinetic_energy", "table"};
  return kinds;
}

}  // namespace

bool is_builtin_kind(const std::string& kind) {
  const auto& kinds = builtin_kinds();
  return std::find(kinds.begin(), kinds.end(), kind) != kinds.end();
}

Rule make_driving_rule(const std::string& id, const std::string& kind,
                       const DrivingParams& p,
                       const std::map<std::string, double>& rule_params) {
  if (kind == "table") {
    return table_rule(id, rule_params, "explicit per-candidate value table");
  }
  if (kind == "speed_limit") {
    bool weighted = false;
    for (const auto& [key, value] : rule_params) {
      if (key != "weighted") {
        throw SemanticError("rule kind 'speed_limit' only accepts the parameter 'weighted'");
      }
      weighted = value != 0.0;
    }
    if (weighted) {
      return {id, "time above the speed limit, weighted by peak exceedance",
              [p](const Realization& x) { return rule_speed_limit_weighted(x, p); }};
    }
    return {id, "time above the speed limit, seconds",
            [p](const Realization& x) { return rule_speed_limit(x, p); }};
  }
  if (!rule_params.empty()) {
    throw SemanticError("rule kind '" + kind + "' takes no parameters");
  }
  if (kind == "blockage") {
    return {id, "1 if the swept footprint hits an obstacle or agent, else 0",
            [p](const Realization& x) { return rule_blockage(x, p); }};
  }
  if (kind == "lane_keeping") {
    return {id, "1 if the footprint leaves the starting lane, else 0",
            [p](const Realization& x) { return rule_lane_keeping(x, p); }};
  }
  if (kind == "clearance") {
    return {id, "clearance shortfall against obstacles, meters",
            [p](const Realization& x) { return rule_clearance(x, p); }};
  }
  if (kind == "path_length") {
    return {id, "trajectory path length, meters",
            [](const Realization& x) { return rule_path_length(x); }};
  }
  if (kind == "collision") {
    return {id, "speed at first contact under maximum braking, m/s",
            [p](const Realization& x) { return rule_collision_speed(x, p); }};
  }
  if (kind == "collision_at_fault") {
    return {id, "contact speed when the ego is at fault, m/s",
            [p](const Realization& x) { return rule_collision_at_fault(x, p); }};
  }
  if (kind == "collision_third_party") {
    return {id, "contact speed when a third party is at fault, m/s",
            [p](const Realization& x) { return rule_collision_third_party(x, p); }};
  }
  if (kind == "lane_change_near_intersection") {
    return {id, "lane-change distance shortfall near an intersection, meters",
            [p](const Realization& x) { return rule_lane_change_near_intersection(x, p); }};
  }
  if (kind == "turning") {
    return {id, "time-weighted heading deviation from the lane, radian-seconds",
            [p](const Realization& x) { return rule_turning(x, p); }};
  }
  if (kind == "kinetic_energy") {
    return {id, "kinetic energy transferred to struck humans, joules",
            [p](const Realization& x) { return rule_kinetic_energy(x, p); }};
  }
  throw SemanticError("unknown rule kind '" + kind + "'");
}

}  // namespace rbk
