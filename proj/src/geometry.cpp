#include "rbk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rbk/error.hpp"

namespace rbk::geo {

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }
double distance(Vec2 a, Vec2 b) { return norm(a - b); }
Vec2 unit_from_heading(double heading) { return {std::cos(heading), std::sin(heading)}; }

double angle_diff(double a, double b) {
  double d = std::fmod(a - b, 2.0 * M_PI);
  if (d > M_PI) d -= 2.0 * M_PI;
  if (d < -M_PI) d += 2.0 * M_PI;
  return d;
}

double lerp_angle(double a, double b, double t) { return a + angle_diff(b, a) * t; }

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  const double scale = std::max({1.0, norm(b - a), norm(c - a)});
  if (std::abs(v) <= 1e-12 * scale * scale) return 0;
  return v > 0 ? 1 : -1;
}

bool on_segment(Vec2 p, const Segment& s) {
  return orientation(s.a, s.b, p) == 0 && p.x <= std::max(s.a.x, s.b.x) + 1e-12 &&
         p.x >= std::min(s.a.x, s.b.x) - 1e-12 && p.y <= std::max(s.a.y, s.b.y) + 1e-12 &&
         p.y >= std::min(s.a.y, s.b.y) - 1e-12;
}

}  // namespace

bool segments_intersect(const Segment& s, const Segment& t) {
  const int o1 = orientation(s.a, s.b, t.a);
  const int o2 = orientation(s.a, s.b, t.b);
  const int o3 = orientation(t.a, t.b, s.a);
  const int o4 = orientation(t.a, t.b, s.b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(t.a, s)) return true;
  if (o2 == 0 && on_segment(t.b, s)) return true;
  if (o3 == 0 && on_segment(s.a, t)) return true;
  if (o4 == 0 && on_segment(s.b, t)) return true;
  return false;
}

bool segment_intersection_point(const Segment& s, const Segment& t, Vec2* out) {
  const Vec2 r = s.b - s.a;
  const Vec2 q = t.b - t.a;
  const double denom = cross(r, q);
  if (std::abs(denom) > 1e-12) {
    const double u = cross(t.a - s.a, q) / denom;
    const double v = cross(t.a - s.a, r) / denom;
    if (u < -1e-12 || u > 1.0 + 1e-12 || v < -1e-12 || v > 1.0 + 1e-12) return false;
    if (out) *out = s.a + r * std::clamp(u, 0.0, 1.0);
    return true;
  }
  if (!segments_intersect(s, t)) return false;
  for (Vec2 p : {t.a, t.b, s.a, s.b}) {
    if (on_segment(p, s) && on_segment(p, t)) {
      if (out) *out = p;
      return true;
    }
  }
  return false;
}

double point_segment_distance(Vec2 p, const Segment& s) {
  const Vec2 d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 <= 0.0) return distance(p, s.a);
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return distance(p, s.a + d * t);
}

std::vector<Vec2> OrientedBox::corners() const {
  const Vec2 ax = unit_from_heading(heading);
  const Vec2 ay{-ax.y, ax.x};
  const Vec2 l = ax * half_length;
  const Vec2 w = ay * half_width;
  return {center + l + w, center - l + w, center - l - w, center + l - w};
}

double OrientedBox::circumradius() const { return std::hypot(half_length, half_width); }

std::pair<double, double> OrientedBox::project(Vec2 axis) const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Vec2 c : corners()) {
    const double v = dot(c, axis);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

bool boxes_overlap(const OrientedBox& a, const OrientedBox& b) {
  if (distance(a.center, b.center) > a.circumradius() + b.circumradius()) return false;
  const Vec2 axes[4] = {unit_from_heading(a.heading),
                        unit_from_heading(a.heading + M_PI / 2.0),
                        unit_from_heading(b.heading),
                        unit_from_heading(b.heading + M_PI / 2.0)};
  for (Vec2 axis : axes) {
    const auto [alo, ahi] = a.project(axis);
    const auto [blo, bhi] = b.project(axis);
    if (ahi < blo || bhi < alo) return false;
  }
  return true;
}

bool Polygon::contains(Vec2 p) const {
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (on_segment(p, {points[i], points[(i + 1) % n]})) return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = points[i], b = points[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xcross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < xcross) inside = !inside;
    }
  }
  return inside;
}

double Polygon::distance_to(Vec2 p) const {
  if (contains(p)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, point_segment_distance(p, {points[i], points[(i + 1) % n]}));
  }
  return best;
}

bool box_intersects_segment(const OrientedBox& b, const Segment& s) {
  Polygon poly{b.corners()};
  if (poly.contains(s.a) || poly.contains(s.b)) return true;
  const auto cs = b.corners();
  for (std::size_t i = 0; i < 4; ++i) {
    if (segments_intersect({cs[i], cs[(i + 1) % 4]}, s)) return true;
  }
  return false;
}

Polyline::Polyline(std::vector<Vec2> points) : pts_(std::move(points)) {
  if (pts_.size() < 2) throw SemanticError("polyline needs at least 2 points");
  cum_.resize(pts_.size(), 0.0);
  for (std::size_t i = 1; i < pts_.size(); ++i) {
    cum_[i] = cum_[i - 1] + distance(pts_[i - 1], pts_[i]);
  }
}

Vec2 Polyline::point_at(double arclength) const {
  const double s = std::clamp(arclength, 0.0, length());
  auto it = std::lower_bound(cum_.begin(), cum_.end(), s);
  std::size_t i = static_cast<std::size_t>(it - cum_.begin());
  if (i == 0) return pts_.front();
  const double seg = cum_[i] - cum_[i - 1];
  if (seg <= 0.0) return pts_[i];
  const double t = (s - cum_[i - 1]) / seg;
  return pts_[i - 1] + (pts_[i] - pts_[i - 1]) * t;
}

double Polyline::heading_at(double arclength) const {
  const double s = std::clamp(arclength, 0.0, length());
  std::size_t i = 1;
  while (i + 1 < cum_.size() && cum_[i] < s) ++i;
  // skip zero-length segments
  std::size_t j = i;
  while (j > 1 && cum_[j] - cum_[j - 1] <= 0.0) --j;
  const Vec2 d = pts_[j] - pts_[j - 1];
  return std::atan2(d.y, d.x);
}

double Polyline::distance_to(Vec2 p, double* arclength) const {
  double best = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
    const Vec2 a = pts_[i], b = pts_[i + 1];
    const Vec2 d = b - a;
    const double len2 = dot(d, d);
    const double t = len2 <= 0.0 ? 0.0 : std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    const double dist = distance(p, a + d * t);
    if (dist < best) {
      best = dist;
      best_s = cum_[i] + std::sqrt(len2) * t;
    }
  }
  if (arclength) *arclength = best_s;
  return best;
}

bool Polyline::self_intersects() const {
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
    for (std::size_t j = i + 2; j + 1 < pts_.size(); ++j) {
      if (i == 0 && j + 2 == pts_.size() && pts_.front() == pts_.back()) continue;
      if (segments_intersect(segment(i), segment(j))) return true;
    }
  }
  return false;
}

}  // namespace rbk::geo
