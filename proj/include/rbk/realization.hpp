#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rbk/geometry.hpp"

namespace rbk {

/// Timed pose sample. Units: seconds, meters, radians, m/s.
struct TrajectorySample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  double speed = 0.0;
};

struct Pose {
  geo::Vec2 position;
  double heading = 0.0;
  double speed = 0.0;
};

struct Trajectory {
  std::string id;
  std::vector<TrajectorySample> samples;

  /// Checks: non-empty, strictly increasing times, speeds >= 0, and consecutive
  /// positions consistent with the sampled speeds within 10%.
  /// Throws SemanticError naming the trajectory.
  void validate() const;

  double start_time() const { return samples.front().t; }
  double end_time() const { return samples.back().t; }
  /// Pose at time t, clamped to the sampled range. Position/speed lerp,
  /// heading interpolated along the shortest arc.
  Pose pose_at(double t) const;

  geo::Polyline path() const;  // sample positions as a polyline (needs >= 2 samples)
  double length() const;       // sum of segment lengths (needs >= 2 samples)
};

enum class BoundaryKind { dashed, solid, double_solid };

/// Travel direction is the centerline's point order; left/right boundaries are
/// relative to that direction.
struct Lane {
  std::string id;
  geo::Polyline centerline;
  geo::Polyline left;
  geo::Polyline right;
  BoundaryKind left_kind = BoundaryKind::dashed;
  BoundaryKind right_kind = BoundaryKind::solid;

  geo::Polygon polygon() const;  // left boundary + reversed right boundary
  bool contains(geo::Vec2 p) const;
  double nominal_heading_at(geo::Vec2 p) const;  // centerline heading at nearest point
};

enum class AgentClass { vehicle, human };

struct FootprintSpec {
  double length = 0.0;
  double width = 0.0;
};

/// A moving traffic participant. Poses beyond the trajectory span clamp to its ends.
struct Agent {
  AgentClass cls = AgentClass::vehicle;
  FootprintSpec footprint;
  Trajectory trajectory;

  geo::OrientedBox box_at(double t) const;
};

struct World {
  std::vector<Lane> lanes;
  std::vector<geo::Polygon> intersections;
  std::vector<geo::OrientedBox> obstacles;  // static
  std::vector<Agent> agents;

  /// Index of the lane containing p, or -1.
  int lane_index_at(geo::Vec2 p) const;
};

/// One candidate outcome: an ego trajectory in a (shared) world.
/// Synthetic realizations used by table rules carry only the id.
struct Realization {
  Trajectory ego;
  FootprintSpec ego_footprint;
  std::shared_ptr<const World> world;

  const std::string& id() const { return ego.id; }
  const World& world_ref() const;  // empty world when unset
  geo::OrientedBox ego_box_at(double t) const;
};

/// Evaluation constants shared by the driving rules.
struct DrivingParams {
  double c0 = 1.0;              // desired lateral clearance, m
  double d_lc = 30.0;           // desired lane-change distance from intersection, m
  double a_max = 3.5;           // braking deceleration, m/s^2
  double speed_limit = 12.5;    // m/s
  double c_tau = 1.0;           // turning weight in the lane-change aggregate
  double collision_step = 0.01; // sweep resolution, s (must be <= 0.1)
  double ego_mass = 1500.0;     // kg, for kinetic energy

  void validate() const;  // throws SemanticError on nonpositive/oversized values
};

/// Realization with a trivial one-point trajectory and no world; table rules
/// only ever read the id.
Realization synthetic_realization(std::string id);

}  // namespace rbk
