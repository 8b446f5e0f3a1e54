#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "dbubble/error.hpp"

namespace dbubble {

inline constexpr double kPi = std::numbers::pi;

/// Endpoints of consecutive segments must agree to this absolute distance.
inline constexpr double kJoinTolerance = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator-(Point a) { return {-a.x, -a.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Point, Point) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline double arg(Point a) { return std::atan2(a.y, a.x); }
inline Point from_polar(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }
/// Left-hand unit normal of a travel direction.
constexpr Point left_normal(Point t) { return {-t.y, t.x}; }
inline Point rotate(Point a, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}
inline bool is_finite(Point a) { return std::isfinite(a.x) && std::isfinite(a.y); }

/// Circle arc traversed from start_angle to end_angle. Angles are not reduced
/// modulo 2pi: ccw arcs have end_angle >= start_angle, cw arcs the reverse.
struct CircularArc {
  Point center;
  double radius = 1.0;
  double start_angle = 0.0;
  double end_angle = 0.0;
  bool ccw = true;

  static CircularArc full_circle(Point center, double radius, double start_angle = 0.0) {
    return {center, radius, start_angle, start_angle + 2.0 * kPi, true};
  }

  double sweep() const { return std::abs(end_angle - start_angle); }
  double length() const { return radius * sweep(); }
  Point at_angle(double theta) const { return center + from_polar(radius, theta); }
  Point start() const { return at_angle(start_angle); }
  Point end() const { return at_angle(end_angle); }
  /// Unit tangent in the direction of travel.
  Point tangent_at(double theta) const {
    const Point t{-std::sin(theta), std::cos(theta)};
    return ccw ? t : -t;
  }
  /// Euclidean curvature measured against the left normal.
  double signed_curvature() const { return ccw ? 1.0 / radius : -1.0 / radius; }
};

struct LineSegment {
  Point a;
  Point b;

  double length() const { return distance(a, b); }
  Point start() const { return a; }
  Point end() const { return b; }
  Point direction() const { return (b - a) / length(); }
};

/// Sampled smooth curve z(s). `param` is strictly increasing (arclength for
/// integrator output, the source parameter for mapped curves) and `velocity`
/// holds dz/dparam at every sample. The sample count is 8m + 1 so that three
/// Richardson levels line up with the endpoints.
struct Polyline {
  std::vector<double> param;
  std::vector<Point> points;
  std::vector<Point> velocity;

  std::size_t size() const { return points.size(); }
  Point start() const { return points.front(); }
  Point end() const { return points.back(); }
};

using Segment = std::variant<CircularArc, LineSegment, Polyline>;

inline Point start_point(const Segment& seg) {
  return std::visit([](const auto& s) { return s.start(); }, seg);
}
inline Point end_point(const Segment& seg) {
  return std::visit([](const auto& s) { return s.end(); }, seg);
}

/// Unit tangent at the start of a segment, in the direction of travel.
inline Point start_tangent(const Segment& seg) {
  if (const auto* a = std::get_if<CircularArc>(&seg)) return a->tangent_at(a->start_angle);
  if (const auto* l = std::get_if<LineSegment>(&seg)) return l->direction();
  const auto& p = std::get<Polyline>(seg);
  return p.velocity.front() / norm(p.velocity.front());
}
inline Point end_tangent(const Segment& seg) {
  if (const auto* a = std::get_if<CircularArc>(&seg)) return a->tangent_at(a->end_angle);
  if (const auto* l = std::get_if<LineSegment>(&seg)) return l->direction();
  const auto& p = std::get<Polyline>(seg);
  return p.velocity.back() / norm(p.velocity.back());
}

inline Segment reversed(const Segment& seg) {
  if (const auto* a = std::get_if<CircularArc>(&seg)) {
    return CircularArc{a->center, a->radius, a->end_angle, a->start_angle, !a->ccw};
  }
  if (const auto* l = std::get_if<LineSegment>(&seg)) return LineSegment{l->b, l->a};
  const auto& p = std::get<Polyline>(seg);
  Polyline r;
  const std::size_t n = p.size();
  r.param.resize(n);
  r.points.resize(n);
  r.velocity.resize(n);
  const double total = p.param.front() + p.param.back();
  for (std::size_t i = 0; i < n; ++i) {
    r.param[i] = total - p.param[n - 1 - i];
    r.points[i] = p.points[n - 1 - i];
    r.velocity[i] = -p.velocity[n - 1 - i];
  }
  return r;
}

/// Apply the linear map z -> [[m00 m01],[m10 m11]] z to a segment. Arcs are
/// only supported for similarity maps (rotations, reflections, uniform scale).
struct LinearMap {
  double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;

  Point operator()(Point p) const { return {m00 * p.x + m01 * p.y, m10 * p.x + m11 * p.y}; }
  double det() const { return m00 * m11 - m01 * m10; }

  static LinearMap scale(double s) { return {s, 0.0, 0.0, s}; }
  static LinearMap rotation(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c, -s, s, c};
  }
  static LinearMap mirror_x() { return {-1.0, 0.0, 0.0, 1.0}; }
};

inline Segment transformed(const Segment& seg, const LinearMap& m) {
  if (const auto* a = std::get_if<CircularArc>(&seg)) {
    const Point e0 = m(Point{1.0, 0.0});
    const double s = norm(e0);
    const double phase = arg(e0);
    if (m.det() > 0.0) {
      return CircularArc{m(a->center), s * a->radius, a->start_angle + phase, a->end_angle + phase,
                         a->ccw};
    }
    // Reflection: theta -> phase - theta reverses the sense of travel.
    return CircularArc{m(a->center), s * a->radius, phase - a->start_angle, phase - a->end_angle,
                       !a->ccw};
  }
  if (const auto* l = std::get_if<LineSegment>(&seg)) return LineSegment{m(l->a), m(l->b)};
  Polyline r = std::get<Polyline>(seg);
  for (auto& q : r.points) q = m(q);
  for (auto& v : r.velocity) v = m(v);
  return r;
}

/// Euclidean distance from the origin to the closest point of a segment.
inline double min_distance_to_origin(const Segment& seg) {
  if (const auto* l = std::get_if<LineSegment>(&seg)) {
    const Point d = l->b - l->a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return norm(l->a);
    const double t = std::clamp(-dot(l->a, d) / len2, 0.0, 1.0);
    return norm(l->a + t * d);
  }
  if (const auto* a = std::get_if<CircularArc>(&seg)) {
    double best = std::min(norm(a->start()), norm(a->end()));
    const double c = norm(a->center);
    if (c == 0.0) return a->radius;
    // Closest point of the full circle sits at angle arg(-center).
    const double closest = arg(-a->center);
    const double lo = std::min(a->start_angle, a->end_angle);
    const double hi = std::max(a->start_angle, a->end_angle);
    const double k = std::ceil((lo - closest) / (2.0 * kPi));
    if (closest + 2.0 * kPi * k <= hi) best = std::min(best, std::abs(c - a->radius));
    return best;
  }
  const auto& p = std::get<Polyline>(seg);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : p.points) best = std::min(best, norm(q));
  return best;
}

/// Oriented piecewise curve built from arcs, segments and sampled pieces.
class BoundaryCurve {
 public:
  BoundaryCurve() = default;

  explicit BoundaryCurve(std::vector<Segment> segments, bool closed = false)
      : segments_(std::move(segments)), closed_(closed) {
    validate();
  }

  explicit BoundaryCurve(Segment segment, bool closed = false)
      : BoundaryCurve(std::vector<Segment>{std::move(segment)}, closed) {}

  const std::vector<Segment>& segments() const { return segments_; }
  bool closed() const { return closed_; }
  bool empty() const { return segments_.empty(); }
  Point start() const { return start_point(segments_.front()); }
  Point end() const { return end_point(segments_.back()); }

  BoundaryCurve reversed() const {
    std::vector<Segment> out;
    out.reserve(segments_.size());
    for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) out.push_back(dbubble::reversed(*it));
    return BoundaryCurve(std::move(out), closed_);
  }

  BoundaryCurve transformed(const LinearMap& m) const {
    std::vector<Segment> out;
    out.reserve(segments_.size());
    for (const auto& s : segments_) out.push_back(dbubble::transformed(s, m));
    BoundaryCurve c(std::move(out), closed_);
    // Reflections reverse arcs through angle negation but keep point order.
    return c;
  }

  BoundaryCurve scaled(double lambda) const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw ValidationError("scale factor must be positive and finite");
    }
    return transformed(LinearMap::scale(lambda));
  }

  BoundaryCurve rotated(double angle) const { return transformed(LinearMap::rotation(angle)); }
  BoundaryCurve mirrored() const { return transformed(LinearMap::mirror_x()); }

  double min_distance_to_origin() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : segments_) best = std::min(best, dbubble::min_distance_to_origin(s));
    return best;
  }

  /// Coarse polygon through the curve, used for simplicity checks and drawing.
  std::vector<Point> sample_points(std::size_t per_segment = 48) const {
    std::vector<Point> out;
    for (const auto& seg : segments_) {
      if (const auto* a = std::get_if<CircularArc>(&seg)) {
        for (std::size_t i = 0; i < per_segment; ++i) {
          const double t = static_cast<double>(i) / static_cast<double>(per_segment);
          out.push_back(a->at_angle(a->start_angle + t * (a->end_angle - a->start_angle)));
        }
      } else if (const auto* l = std::get_if<LineSegment>(&seg)) {
        for (std::size_t i = 0; i < per_segment; ++i) {
          const double t = static_cast<double>(i) / static_cast<double>(per_segment);
          out.push_back(l->a + t * (l->b - l->a));
        }
      } else {
        const auto& p = std::get<Polyline>(seg);
        const std::size_t n = p.size();
        const std::size_t stride = std::max<std::size_t>(1, (n - 1) / (4 * per_segment));
        for (std::size_t i = 0; i + 1 < n; i += stride) out.push_back(p.points[i]);
      }
    }
    if (!closed_ && !segments_.empty()) out.push_back(end());
    return out;
  }

  /// True when the sampled polygon of a closed curve has no proper crossings.
  bool is_simple() const {
    const auto pts = sample_points();
    const std::size_t n = pts.size();
    if (n < 4) return true;
    auto crosses = [](Point a, Point b, Point c, Point d) {
      const double d1 = cross(b - a, c - a);
      const double d2 = cross(b - a, d - a);
      const double d3 = cross(d - c, a - c);
      const double d4 = cross(d - c, b - c);
      return ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) &&
             ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0));
    };
    const std::size_t edges = closed_ ? n : n - 1;
    for (std::size_t i = 0; i < edges; ++i) {
      for (std::size_t j = i + 2; j < edges; ++j) {
        if (closed_ && i == 0 && j == edges - 1) continue;
        if (crosses(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n])) return false;
      }
    }
    return true;
  }

 private:
  void validate() const {
    if (segments_.empty()) throw ValidationError("boundary curve has no segments");
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      validate_segment(segments_[i], i);
      if (i > 0 && distance(end_point(segments_[i - 1]), start_point(segments_[i])) > kJoinTolerance) {
        throw ValidationError("segments " + std::to_string(i - 1) + " and " + std::to_string(i) +
                              " do not join");
      }
    }
    if (closed_ && distance(end(), start()) > kJoinTolerance) {
      throw ValidationError("closed curve does not return to its start point");
    }
  }

  static void validate_segment(const Segment& seg, std::size_t index) {
    const std::string where = "segment " + std::to_string(index) + ": ";
    if (const auto* a = std::get_if<CircularArc>(&seg)) {
      if (!(a->radius > 0.0) || !std::isfinite(a->radius) || !is_finite(a->center)) {
        throw ValidationError(where + "arc needs a finite positive radius");
      }
      if (!std::isfinite(a->start_angle) || !std::isfinite(a->end_angle)) {
        throw ValidationError(where + "arc angles must be finite");
      }
      if ((a->end_angle - a->start_angle) * (a->ccw ? 1.0 : -1.0) < 0.0) {
        throw ValidationError(where + "arc angles disagree with its orientation flag");
      }
      if (a->sweep() > 2.0 * kPi * (1.0 + 1e-12)) {
        throw ValidationError(where + "arc sweeps more than a full turn");
      }
      return;
    }
    if (const auto* l = std::get_if<LineSegment>(&seg)) {
      if (!is_finite(l->a) || !is_finite(l->b)) throw ValidationError(where + "non-finite endpoint");
      return;
    }
    const auto& p = std::get<Polyline>(seg);
    const std::size_t n = p.points.size();
    if (n < 9 || (n - 1) % 8 != 0) {
      throw ValidationError(where + "polyline needs 8m+1 samples (m >= 1)");
    }
    if (p.param.size() != n || p.velocity.size() != n) {
      throw ValidationError(where + "polyline sample arrays differ in length");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_finite(p.points[i]) || !is_finite(p.velocity[i]) || !std::isfinite(p.param[i])) {
        throw ValidationError(where + "non-finite polyline sample");
      }
      if (i > 0 && !(p.param[i] > p.param[i - 1])) {
        throw ValidationError(where + "polyline parameter must be strictly increasing");
      }
    }
  }

  std::vector<Segment> segments_;
  bool closed_ = false;
};

/// Polyline sampled from a parametric curve z(t), t in [t0, t1], with 8m+1 samples.
template <class Position, class Velocity>
Polyline sample_parametric(Position&& z, Velocity&& dz, double t0, double t1, std::size_t intervals) {
  if (intervals < 8 || intervals % 8 != 0) {
    throw ValidationError("parametric sampling needs a positive multiple of 8 intervals");
  }
  Polyline out;
  out.param.reserve(intervals + 1);
  out.points.reserve(intervals + 1);
  out.velocity.reserve(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(intervals);
    out.param.push_back(t);
    out.points.push_back(z(t));
    out.velocity.push_back(dz(t));
  }
  return out;
}

}  // namespace dbubble
