#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace rbk::geo {

// Units are meters and radians throughout.

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2&) const = default;
};

double dot(Vec2 a, Vec2 b);
double cross(Vec2 a, Vec2 b);
double norm(Vec2 a);
double distance(Vec2 a, Vec2 b);
Vec2 unit_from_heading(double heading);

/// Smallest signed difference a-b, wrapped into [-pi, pi].
double angle_diff(double a, double b);

/// Linear interpolation of headings along the shortest arc.
double lerp_angle(double a, double b, double t);

struct Segment {
  Vec2 a, b;
};

/// Closed test: touching endpoints count as intersecting.
bool segments_intersect(const Segment& s, const Segment& t);

/// Proper or touching intersection point; false when disjoint or collinear-overlapping
/// without a unique point (collinear overlap reports the first endpoint inside).
bool segment_intersection_point(const Segment& s, const Segment& t, Vec2* out);

double point_segment_distance(Vec2 p, const Segment& s);

/// Axis-aligned-free rectangle: center, half extents along heading / its normal.
struct OrientedBox {
  Vec2 center;
  double half_length = 0.0;
  double half_width = 0.0;
  double heading = 0.0;

  std::vector<Vec2> corners() const;  // counter-clockwise for heading 0
  double circumradius() const;
  /// Projection onto a unit axis: [min, max].
  std::pair<double, double> project(Vec2 axis) const;
};

/// Separating-axis test; touching boxes count as overlapping.
bool boxes_overlap(const OrientedBox& a, const OrientedBox& b);

/// Simple polygon, vertices in order (either winding), implicitly closed.
struct Polygon {
  std::vector<Vec2> points;

  bool contains(Vec2 p) const;  // boundary counts as inside
  double distance_to(Vec2 p) const;  // 0 when inside
};

bool box_intersects_segment(const OrientedBox& b, const Segment& s);

/// Open polygonal chain with cached cumulative arclength.
class Polyline {
 public:
  Polyline() = default;
  explicit Polyline(std::vector<Vec2> points);

  const std::vector<Vec2>& points() const { return pts_; }
  std::size_t segment_count() const { return pts_.empty() ? 0 : pts_.size() - 1; }
  Segment segment(std::size_t i) const { return {pts_[i], pts_[i + 1]}; }
  double length() const { return cum_.empty() ? 0.0 : cum_.back(); }

  Vec2 point_at(double arclength) const;    // clamped to [0, length]
  double heading_at(double arclength) const;

  /// Distance from p to the chain, plus arclength of the closest point.
  double distance_to(Vec2 p, double* arclength = nullptr) const;

  bool self_intersects() const;  // non-adjacent segment crossings

 private:
  std::vector<Vec2> pts_;
  std::vector<double> cum_;
};

}  // namespace rbk::geo
