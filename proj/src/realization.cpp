#include "rbk/realization.hpp"

#include <algorithm>
#include <cmath>

#include "rbk/error.hpp"

namespace rbk {

void Trajectory::validate() const {
  const std::string who = "trajectory '" + id + "'";
  if (samples.empty()) throw SemanticError(who + ": no samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].speed < 0.0) {
      throw SemanticError(who + ": negative speed at sample " + std::to_string(i));
    }
    if (i == 0) continue;
    if (samples[i].t <= samples[i - 1].t) {
      throw SemanticError(who + ": non-increasing time at sample " + std::to_string(i));
    }
    const double dt = samples[i].t - samples[i - 1].t;
    const double seg = geo::distance({samples[i - 1].x, samples[i - 1].y},
                                     {samples[i].x, samples[i].y});
    const double implied = 0.5 * (samples[i - 1].speed + samples[i].speed) * dt;
    if (std::abs(seg - implied) > 0.1 * std::max(seg, implied) + 1e-6) {
      throw SemanticError(who + ": position/speed mismatch at sample " + std::to_string(i) +
                          " (moved " + std::to_string(seg) + " m, speeds imply " +
                          std::to_string(implied) + " m)");
    }
  }
}

Pose Trajectory::pose_at(double t) const {
  if (samples.empty()) throw EvalError("trajectory '" + id + "' has no samples");
  if (t <= samples.front().t) {
    const auto& s = samples.front();
    return {{s.x, s.y}, s.heading, s.speed};
  }
  if (t >= samples.back().t) {
    const auto& s = samples.back();
    return {{s.x, s.y}, s.heading, s.speed};
  }
  std::size_t i = 1;
  while (samples[i].t < t) ++i;
  const auto& a = samples[i - 1];
  const auto& b = samples[i];
  const double u = (t - a.t) / (b.t - a.t);
  return {{a.x + (b.x - a.x) * u, a.y + (b.y - a.y) * u},
          geo::lerp_angle(a.heading, b.heading, u),
          a.speed + (b.speed - a.speed) * u};
}

geo::Polyline Trajectory::path() const {
  if (samples.size() < 2) {
    throw EvalError("trajectory '" + id + "' needs at least 2 samples for a path");
  }
  std::vector<geo::Vec2> pts;
  pts.reserve(samples.size());
  for (const auto& s : samples) pts.push_back({s.x, s.y});
  return geo::Polyline(std::move(pts));
}

double Trajectory::length() const { return path().length(); }

geo::Polygon Lane::polygon() const {
  std::vector<geo::Vec2> pts = left.points();
  const auto& r = right.points();
  pts.insert(pts.end(), r.rbegin(), r.rend());
  return geo::Polygon{std::move(pts)};
}

bool Lane::contains(geo::Vec2 p) const { return polygon().contains(p); }

double Lane::nominal_heading_at(geo::Vec2 p) const {
  double s = 0.0;
  centerline.distance_to(p, &s);
  return centerline.heading_at(s);
}

geo::OrientedBox Agent::box_at(double t) const {
  const Pose pose = trajectory.pose_at(t);
  return {pose.position, footprint.length / 2.0, footprint.width / 2.0, pose.heading};
}

int World::lane_index_at(geo::Vec2 p) const {
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    if (lanes[i].contains(p)) return static_cast<int>(i);
  }
  return -1;
}

const World& Realization::world_ref() const {
  static const World empty;
  return world ? *world : empty;
}

geo::OrientedBox Realization::ego_box_at(double t) const {
  const Pose pose = ego.pose_at(t);
  return {pose.position, ego_footprint.length / 2.0, ego_footprint.width / 2.0, pose.heading};
}

void DrivingParams::validate() const {
  if (c0 <= 0.0) throw SemanticError("params: c0 must be positive");
  if (d_lc <= 0.0) throw SemanticError("params: d_lc must be positive");
  if (a_max <= 0.0) throw SemanticError("params: a_max must be positive");
  if (speed_limit <= 0.0) throw SemanticError("params: speed_limit must be positive");
  if (c_tau < 0.0) throw SemanticError("params: c_tau must be non-negative");
  if (collision_step <= 0.0 || collision_step > 0.1) {
    throw SemanticError("params: collision_step must be in (0, 0.1] s");
  }
  if (ego_mass <= 0.0) throw SemanticError("params: ego_mass must be positive");
}

Realization synthetic_realization(std::string id) {
  Realization r;
  r.ego.id = std::move(id);
  r.ego.samples = {{0.0, 0.0, 0.0, 0.0, 0.0}};
  return r;
}

}  // namespace rbk
