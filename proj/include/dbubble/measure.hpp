#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include "dbubble/error.hpp"
#include "dbubble/geometry.hpp"
#include "dbubble/quadrature.hpp"

namespace dbubble {

/// Default absolute tolerance for weighted length and area quadrature.
inline constexpr double kDefaultQuadratureTolerance = 1e-10;

/// Exponent p of the radial density f(r) = r^p.
class DensityExponent {
 public:
  constexpr DensityExponent() = default;
  explicit DensityExponent(double p) : p_(p) {
    if (!std::isfinite(p)) throw ValidationError("density exponent must be finite");
  }
  constexpr double value() const { return p_; }

  /// f at a point. The origin evaluates to 0 for p > 0 and 1 for p = 0.
  double density(Point z) const {
    if (p_ == 0.0) return 1.0;
    return std::pow(norm(z), p_);
  }

 private:
  double p_ = 0.0;
};

struct WeightedMeasureReport {
  double weighted_length = 0.0;
  double weighted_area = 0.0;
  double quadrature_error_estimate = 0.0;
};

namespace detail {

inline void check_integrable(const Segment& seg, DensityExponent p) {
  if (p.value() < 0.0 && min_distance_to_origin(seg) == 0.0) {
    throw IntegrabilityError("negative density exponent on a curve through the origin");
  }
}

// Integrates g(z, dz/dt) dt over a single segment, where dz/dt is the
// parametrization velocity (arcs by angle, line segments by arclength).
template <class G>
QuadratureResult integrate_segment(const Segment& seg, G&& g, double tol) {
  if (const auto* a = std::get_if<CircularArc>(&seg)) {
    const double direction = a->ccw ? 1.0 : -1.0;
    auto f = [&](double theta) {
      const Point z = a->at_angle(theta);
      const Point v = direction * a->radius * Point{-std::sin(theta), std::cos(theta)};
      return g(z, v);
    };
    // Integrate in increasing angle; the orientation sign lives in v.
    const double lo = std::min(a->start_angle, a->end_angle);
    const double hi = std::max(a->start_angle, a->end_angle);
    return integrate_adaptive(f, lo, hi, tol);
  }
  if (const auto* l = std::get_if<LineSegment>(&seg)) {
    const double len = l->length();
    if (len == 0.0) return {};
    const Point v = (l->b - l->a) / len;
    auto f = [&](double s) { return g(l->a + s * v, v); };
    return integrate_adaptive(f, 0.0, len, tol);
  }
  const auto& poly = std::get<Polyline>(seg);
  std::vector<double> values(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) values[i] = g(poly.points[i], poly.velocity[i]);
  return integrate_samples(poly.param, values);
}

template <class G>
QuadratureResult integrate_curve(const BoundaryCurve& curve, G&& g, double tol) {
  if (!(tol > 0.0)) throw ValidationError("quadrature tolerance must be positive");
  if (curve.empty()) throw ValidationError("empty curve");
  const double per_segment = tol / static_cast<double>(curve.segments().size());
  QuadratureResult total;
  for (const auto& seg : curve.segments()) total += integrate_segment(seg, g, per_segment);
  return total;
}

inline std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

inline void require_tolerance(const QuadratureResult& r, double tol, const char* what) {
  if (!(r.error <= tol) || !std::isfinite(r.value)) {
    throw QuadratureError(std::string(what) + ": quadrature error estimate " + short_number(r.error) +
                          " exceeds tolerance " + short_number(tol));
  }
}

}  // namespace detail

/// Weighted length with its error estimate; does not enforce the tolerance.
inline QuadratureResult weighted_length_estimate(const BoundaryCurve& curve, DensityExponent p,
                                                 double tol = kDefaultQuadratureTolerance) {
  for (const auto& seg : curve.segments()) detail::check_integrable(seg, p);
  return detail::integrate_curve(
      curve, [p](Point z, Point v) { return p.density(z) * norm(v); }, tol);
}

/// Integral of r^p ds along the curve.
inline double weighted_length(const BoundaryCurve& curve, DensityExponent p,
                              double tol = kDefaultQuadratureTolerance) {
  const auto r = weighted_length_estimate(curve, p, tol);
  detail::require_tolerance(r, tol, "weighted length");
  return r.value;
}

/// Signed weighted area enclosed by a closed loop, from the boundary identity
/// div(r^p (x, y)) = (p + 2) r^p. Counterclockwise loops give positive area.
inline QuadratureResult weighted_area_estimate(const BoundaryCurve& loop, DensityExponent p,
                                               double tol = kDefaultQuadratureTolerance) {
  if (!loop.closed()) throw ValidationError("weighted area needs a closed loop");
  if (p.value() <= -2.0) throw ValidationError("weighted area needs p > -2");
  for (const auto& seg : loop.segments()) detail::check_integrable(seg, p);
  if (!loop.is_simple()) throw UndefinedResultError("loop intersects itself");
  const double scale = 1.0 / (p.value() + 2.0);
  return detail::integrate_curve(
      loop, [p, scale](Point z, Point v) { return scale * p.density(z) * cross(z, v); }, tol);
}

inline double weighted_area(const BoundaryCurve& loop, DensityExponent p,
                            double tol = kDefaultQuadratureTolerance) {
  const auto r = weighted_area_estimate(loop, p, tol);
  detail::require_tolerance(r, tol, "weighted area");
  return r.value;
}

/// Length and signed area of a closed loop in one report.
inline WeightedMeasureReport measure_loop(const BoundaryCurve& loop, DensityExponent p,
                                          double tol = kDefaultQuadratureTolerance) {
  const auto length = weighted_length_estimate(loop, p, tol / 2.0);
  const auto area = weighted_area_estimate(loop, p, tol / 2.0);
  WeightedMeasureReport report{length.value, area.value, length.error + area.error};
  if (!(report.quadrature_error_estimate <= tol)) {
    throw QuadratureError("loop measure: quadrature error estimate exceeds tolerance");
  }
  return report;
}

/// Scale about the origin. Under r^p in the plane lengths pick up lambda^(p+1)
/// and areas lambda^(p+2).
inline BoundaryCurve scale_geometry(const BoundaryCurve& curve, double lambda) {
  return curve.scaled(lambda);
}

inline double length_scale_factor(DensityExponent p, double lambda) {
  return std::pow(lambda, p.value() + 1.0);
}
inline double area_scale_factor(DensityExponent p, double lambda) {
  return std::pow(lambda, p.value() + 2.0);
}

}  // namespace dbubble
