#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <string_view>
#include <vector>

#include "dbubble/error.hpp"
#include "dbubble/geometry.hpp"
#include "dbubble/measure.hpp"

namespace dbubble {

/// Point of a cone in polar form. The angle is not reduced, so a curve that
/// winds past the principal sector keeps a continuous angle.
struct ConePoint {
  double radius = 0.0;
  double angle = 0.0;

  Point cartesian() const { return from_polar(radius, angle); }
};

namespace detail {

inline void require_cone_exponent(double e) {
  if (!(e > 0.0) || !std::isfinite(e)) throw ValidationError("cone map needs a positive power");
}

// z -> c z^e in polar form with arg z in (-pi, pi].
inline ConePoint power_map(Point z, double c, double e) {
  require_cone_exponent(e);
  if (!is_finite(z)) throw ValidationError("point must be finite");
  const double r = norm(z);
  if (r == 0.0) return {};
  return {c * std::pow(r, e), e * arg(z)};
}

inline Point power_inverse(ConePoint w, double c, double e) {
  require_cone_exponent(e);
  if (!(w.radius >= 0.0) || !std::isfinite(w.radius) || !std::isfinite(w.angle)) {
    throw ValidationError("cone point must be finite with nonnegative radius");
  }
  if (w.radius == 0.0) return {0.0, 0.0};
  if (std::abs(w.angle) > e * kPi * (1.0 + 1e-15)) {
    throw DomainError("cone angle outside the principal sector");
  }
  return from_polar(std::pow(w.radius / c, 1.0 / e), w.angle / e);
}

// Image of a curve under z -> c z^e sampled per segment, with the angle
// carried continuously and velocities from the derivative c e z^(e-1) z'.
inline BoundaryCurve power_map_curve(const BoundaryCurve& curve, double c, double e, std::size_t intervals) {
  require_cone_exponent(e);
  if (intervals < 8 || intervals % 8 != 0) throw ValidationError("sample interval count must be a multiple of 8");
  if (curve.min_distance_to_origin() == 0.0) throw DomainError("curve passes through the origin");
  std::vector<Segment> out;
  double carried = arg(curve.start());
  for (const auto& seg : curve.segments()) {
    Polyline poly;
    auto add = [&](double t, Point z, Point dz) {
      const double raw = arg(z);
      const double theta = raw + 2.0 * kPi * std::round((carried - raw) / (2.0 * kPi));
      carried = theta;
      const std::complex<double> zc(z.x, z.y);
      const std::complex<double> dw = c * e * std::pow(zc, e - 1.0) * std::complex<double>(dz.x, dz.y);
      // pow above uses the principal branch; rotate it onto the carried one.
      const std::complex<double> fix = std::polar(1.0, (e - 1.0) * (theta - raw));
      const std::complex<double> v = dw * fix;
      poly.param.push_back(t);
      poly.points.push_back(from_polar(c * std::pow(norm(z), e), e * theta));
      poly.velocity.push_back({v.real(), v.imag()});
    };
    if (const auto* p = std::get_if<Polyline>(&seg)) {
      // Polylines keep their own sampling grid.
      for (std::size_t k = 0; k < p->size(); ++k) add(p->param[k], p->points[k], p->velocity[k]);
    } else {
      for (std::size_t i = 0; i <= intervals; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(intervals);
        if (const auto* a = std::get_if<CircularArc>(&seg)) {
          const double th = a->start_angle + u * (a->end_angle - a->start_angle);
          const double dth = a->end_angle - a->start_angle;
          add(u, a->at_angle(th), dth * a->radius * Point{-std::sin(th), std::cos(th)});
        } else {
          const auto& l = std::get<LineSegment>(seg);
          add(u, l.a + u * (l.b - l.a), l.b - l.a);
        }
      }
    }
    out.emplace_back(std::move(poly));
  }
  // The image of a loop around the origin does not close, so keep it open.
  return BoundaryCurve(std::move(out), false);
}

}  // namespace detail

inline constexpr std::size_t kDefaultMapIntervals = 1024;

/// w = z^(p+1)/(p+1): the plane with density r^p becomes a Euclidean cone of
/// angle (p+1) pi per half-plane, with weighted length equal to cone length.
inline ConePoint map_to_area_cone(Point z, DensityExponent p) {
  return detail::power_map(z, 1.0 / (p.value() + 1.0), p.value() + 1.0);
}
inline Point map_from_area_cone(ConePoint w, DensityExponent p) {
  return detail::power_inverse(w, 1.0 / (p.value() + 1.0), p.value() + 1.0);
}
inline BoundaryCurve map_curve_to_area_cone(const BoundaryCurve& c, DensityExponent p,
                                            std::size_t intervals = kDefaultMapIntervals) {
  return detail::power_map_curve(c, 1.0 / (p.value() + 1.0), p.value() + 1.0, intervals);
}

/// w = (2/(p+2)) z^((p+2)/2): weighted area in the plane becomes Euclidean
/// area of the image.
inline ConePoint map_to_perimeter_cone(Point z, DensityExponent p) {
  return detail::power_map(z, 2.0 / (p.value() + 2.0), (p.value() + 2.0) / 2.0);
}
inline Point map_from_perimeter_cone(ConePoint w, DensityExponent p) {
  return detail::power_inverse(w, 2.0 / (p.value() + 2.0), (p.value() + 2.0) / 2.0);
}
inline BoundaryCurve map_curve_to_perimeter_cone(const BoundaryCurve& c, DensityExponent p,
                                                 std::size_t intervals = kDefaultMapIntervals) {
  return detail::power_map_curve(c, 2.0 / (p.value() + 2.0), (p.value() + 2.0) / 2.0, intervals);
}

/// Under the perimeter-cone map, the image length measured with density
/// |w|^(p/(p+2)) is c(p) times the weighted length in the plane, with
/// c(p) = ((p+2)/2)^(-p/(p+2)).
inline double perimeter_cone_length_factor(DensityExponent p) {
  const double q = p.value();
  return std::pow((q + 2.0) / 2.0, -q / (q + 2.0));
}

/// Euclidean area swept from the apex by an image curve, (1/2) integral of
/// w x dw. For a closed image this is its enclosed area; for the open image
/// of a loop around the origin it is the area of the cone it encloses.
inline double cone_swept_area(const BoundaryCurve& image, double tol = kDefaultQuadratureTolerance) {
  const auto r = detail::integrate_curve(image, [](Point w, Point v) { return 0.5 * cross(w, v); }, tol);
  detail::require_tolerance(r, tol, "cone area");
  return r.value;
}

// ---------------------------------------------------------------------------
// Geodesics in the plane with density r^p.

enum class GeodesicKind { segment_to_origin, two_segments_via_origin, cone_chord };

inline std::string_view to_string(GeodesicKind k) {
  switch (k) {
    case GeodesicKind::segment_to_origin: return "segment-to-origin";
    case GeodesicKind::two_segments_via_origin: return "two-segments-via-origin";
    case GeodesicKind::cone_chord: return "cone-chord";
  }
  return "unknown";
}

struct GeodesicPath {
  GeodesicKind kind = GeodesicKind::cone_chord;
  std::vector<Point> waypoints;
  double weighted_length = 0.0;
  /// The path itself: straight pieces, or the pulled-back cone chord.
  BoundaryCurve path;
  /// Both candidate lengths; the chord is infinite when it does not exist.
  double via_origin_length = 0.0;
  double chord_length = 0.0;
};

inline constexpr std::size_t kGeodesicIntervals = 4096;

/// Shortest path between a and b: the lesser of the two rays through the
/// origin and, when the unfolded angle (p+1) dtheta is below pi, the straight
/// chord on the area cone pulled back to the plane.
inline GeodesicPath geodesic(DensityExponent p, Point a, Point b) {
  if (!is_finite(a) || !is_finite(b)) throw ValidationError("geodesic endpoints must be finite");
  if (!(p.value() > -1.0)) throw ValidationError("geodesic needs p > -1");
  const double e = p.value() + 1.0;
  GeodesicPath g;
  g.waypoints = {a, b};
  if (a == b) {
    g.kind = GeodesicKind::cone_chord;
    g.path = BoundaryCurve(Segment{LineSegment{a, b}});
    return g;
  }
  const double ra = norm(a);
  const double rb = norm(b);
  g.via_origin_length = (std::pow(ra, e) + std::pow(rb, e)) / e;
  g.chord_length = std::numeric_limits<double>::infinity();
  if (ra == 0.0 || rb == 0.0) {
    g.kind = GeodesicKind::segment_to_origin;
    g.path = BoundaryCurve(Segment{LineSegment{a, b}});
    g.weighted_length = g.via_origin_length;
    g.chord_length = g.via_origin_length;
    return g;
  }
  // Signed turn from a to b in (-pi, pi].
  const double dtheta = std::atan2(cross(a, b), dot(a, b));
  const double unfolded = e * std::abs(dtheta);
  if (unfolded < kPi) {
    const double wa = std::pow(ra, e) / e;
    const double wb = std::pow(rb, e) / e;
    g.chord_length = std::sqrt(std::max(0.0, wa * wa + wb * wb - 2.0 * wa * wb * std::cos(unfolded)));
  }
  if (g.via_origin_length <= g.chord_length) {
    g.kind = GeodesicKind::two_segments_via_origin;
    g.waypoints = {a, {0.0, 0.0}, b};
    g.path = BoundaryCurve({LineSegment{a, {0.0, 0.0}}, LineSegment{{0.0, 0.0}, b}});
    g.weighted_length = g.via_origin_length;
    return g;
  }

  // Chord in a local frame of the cone where a sits at angle e * arg(a).
  using C = std::complex<double>;
  const double alpha_a = e * arg(a);
  const C wa = std::polar(std::pow(ra, e) / e, alpha_a);
  const C wb = std::polar(std::pow(rb, e) / e, alpha_a + e * dtheta);
  Polyline poly;
  double carried = alpha_a;
  for (std::size_t i = 0; i <= kGeodesicIntervals; ++i) {
    const double t = static_cast<double>(i) / kGeodesicIntervals;
    const C w = wa + t * (wb - wa);
    const double raw = std::arg(w);
    const double alpha = raw + 2.0 * kPi * std::round((carried - raw) / (2.0 * kPi));
    carried = alpha;
    const double r = std::pow(e * std::abs(w), 1.0 / e);
    const C z = std::polar(r, alpha / e);
    // dz/dt = (dw/dt) / z^p on the same branch.
    const C dz = (wb - wa) / std::polar(std::pow(r, p.value()), p.value() * alpha / e);
    poly.param.push_back(t);
    poly.points.push_back({z.real(), z.imag()});
    poly.velocity.push_back({dz.real(), dz.imag()});
  }
  poly.points.front() = a;
  poly.points.back() = b;
  g.kind = GeodesicKind::cone_chord;
  g.path = BoundaryCurve(Segment{std::move(poly)});
  g.weighted_length = g.chord_length;
  return g;
}

// ---------------------------------------------------------------------------
// The area-preserving polar map r -> sqrt(r^2 - eps).

inline Point apply_phi_eps(Point z, double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw ValidationError("eps must be nonnegative");
  const double r2 = dot(z, z);
  if (!(r2 > eps)) throw DomainError("point inside the disk of radius sqrt(eps)");
  if (eps == 0.0) return z;
  return z * std::sqrt((r2 - eps) / r2);
}

/// Differential of the map at z: g I + (g'/r) z z^T with g = sqrt(r^2-eps)/r.
inline LinearMap phi_eps_jacobian(Point z, double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw ValidationError("eps must be nonnegative");
  const double r2 = dot(z, z);
  if (!(r2 > eps)) throw DomainError("point inside the disk of radius sqrt(eps)");
  const double root = std::sqrt(r2 - eps);
  const double r = std::sqrt(r2);
  const double g = root / r;
  const double gr = eps / (r2 * root) / r;  // g'(r) / r
  return {g + gr * z.x * z.x, gr * z.x * z.y, gr * z.y * z.x, g + gr * z.y * z.y};
}

/// Image of a curve under the map, sampled per segment with exact velocities.
/// eps = 0 returns the curve unchanged.
inline BoundaryCurve apply_phi_eps(const BoundaryCurve& curve, double eps,
                                   std::size_t intervals = kDefaultMapIntervals) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw ValidationError("eps must be nonnegative");
  if (eps == 0.0) return curve;
  if (intervals < 8 || intervals % 8 != 0) throw ValidationError("sample interval count must be a multiple of 8");
  if (!(curve.min_distance_to_origin() > std::sqrt(eps))) {
    throw DomainError("curve enters the disk of radius sqrt(eps)");
  }
  std::vector<Segment> out;
  for (const auto& seg : curve.segments()) {
    Polyline poly;
    auto add = [&](double t, Point z, Point dz) {
      poly.param.push_back(t);
      poly.points.push_back(apply_phi_eps(z, eps));
      poly.velocity.push_back(phi_eps_jacobian(z, eps)(dz));
    };
    if (const auto* p = std::get_if<Polyline>(&seg)) {
      for (std::size_t k = 0; k < p->size(); ++k) add(p->param[k], p->points[k], p->velocity[k]);
    } else {
      for (std::size_t i = 0; i <= intervals; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(intervals);
        if (const auto* a = std::get_if<CircularArc>(&seg)) {
          const double th = a->start_angle + u * (a->end_angle - a->start_angle);
          const double dth = a->end_angle - a->start_angle;
          add(u, a->at_angle(th), dth * a->radius * Point{-std::sin(th), std::cos(th)});
        } else {
          const auto& l = std::get<LineSegment>(seg);
          add(u, l.a + u * (l.b - l.a), l.b - l.a);
        }
      }
    }
    out.emplace_back(std::move(poly));
  }
  return BoundaryCurve(std::move(out), curve.closed());
}

}  // namespace dbubble
