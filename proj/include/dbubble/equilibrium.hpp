#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "dbubble/candidates.hpp"
#include "dbubble/cgc_ode.hpp"
#include "dbubble/error.hpp"
#include "dbubble/geometry.hpp"
#include "dbubble/measure.hpp"
#include "dbubble/quadrature.hpp"

namespace dbubble {

/// Generalized curvature of the circle (center, R) at an on-circle point,
/// measured against the inward normal N: 1/R - p (N . z) / |z|^2.
/// Constant exactly when the circle passes through or is centered at the
/// origin, with values (1 + p/2)/R and (1 + p)/R respectively.
inline double circle_generalized_curvature(Point center, double R, Point point, DensityExponent p) {
  if (!(R > 0.0) || !std::isfinite(R)) throw ValidationError("circle radius must be positive");
  if (std::abs(distance(point, center) - R) > 1e-10 * std::max(1.0, R)) {
    throw ValidationError("point is not on the circle");
  }
  const double r2 = dot(point, point);
  if (r2 == 0.0) throw SingularityError("generalized curvature is undefined at the origin");
  const Point inward = (center - point) / R;
  return 1.0 / R - p.value() * dot(inward, point) / r2;
}

/// Cocycle of the standard bubble from its radii alone: each outer circle
/// passes through the origin so its generalized curvature is (1 + p/2)/r,
/// and the interface carries the difference.
inline double standard_cocycle_symbolic(DensityExponent p, double r1, double r2) {
  const double k = 1.0 + p.value() / 2.0;
  if (r1 == r2) return 0.0;
  const double rm = 1.0 / std::abs(1.0 / r2 - 1.0 / r1);
  return k * (1.0 / r2 - 1.0 / r1) - k / rm;
}

struct VertexAngles {
  Point vertex;
  std::vector<double> angles;  // between consecutive incident edges, counterclockwise
  bool at_origin = false;
};

struct CurvatureSample {
  std::size_t edge = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double variation() const { return max - min; }
};

struct EquilibriumReport {
  std::vector<VertexAngles> vertex_angles;
  std::vector<CurvatureSample> curvature_by_segment;
  /// Region potentials P1, P2 fitted to the edge curvatures (exterior is 0).
  std::array<double, 2> potentials{};
  double cocycle_residual = 0.0;
  bool equilibrium = true;
  std::string reason;
};

/// kappa_f samples per boundary piece.
inline constexpr std::size_t kCurvatureSamples = 256;

namespace detail {

// Generalized curvature along a segment at `count` interior points, measured
// against the left normal of the direction of travel.
inline std::vector<double> sample_curvature(const Segment& seg, DensityExponent p, std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  if (const auto* a = std::get_if<CircularArc>(&seg)) {
    for (std::size_t i = 0; i < count; ++i) {
      const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(count);
      const double theta = a->start_angle + t * (a->end_angle - a->start_angle);
      out.push_back(generalized_curvature(a->at_angle(theta), a->tangent_at(theta), a->signed_curvature(), p));
    }
    return out;
  }
  if (const auto* l = std::get_if<LineSegment>(&seg)) {
    for (std::size_t i = 0; i < count; ++i) {
      const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(count);
      out.push_back(generalized_curvature(l->a + t * (l->b - l->a), l->direction(), 0.0, p));
    }
    return out;
  }
  // Polyline: tangent angle differentiated by a five-point stencil in the
  // sampling parameter, divided by the speed.
  const auto& poly = std::get<Polyline>(seg);
  const std::size_t n = poly.size();
  if (n < 9) throw ValidationError("polyline too short for curvature sampling");
  std::vector<double> phi(n);
  phi[0] = arg(poly.velocity[0]);
  for (std::size_t i = 1; i < n; ++i) {
    const double raw = arg(poly.velocity[i]);
    phi[i] = raw + 2.0 * kPi * std::round((phi[i - 1] - raw) / (2.0 * kPi));
  }
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t i = 2 + (k * (n - 5)) / std::max<std::size_t>(1, count - 1);
    i = std::clamp<std::size_t>(i, 2, n - 3);
    const double h = (poly.param[i + 2] - poly.param[i - 2]) / 4.0;
    const double dphi = (phi[i - 2] - 8.0 * phi[i - 1] + 8.0 * phi[i + 1] - phi[i + 2]) / (12.0 * h);
    const double speed = norm(poly.velocity[i]);
    const Point t = poly.velocity[i] / speed;
    out.push_back(generalized_curvature(poly.points[i], t, dphi / speed, p));
  }
  return out;
}

inline std::vector<double> sample_curvature(const BoundaryCurve& c, DensityExponent p, std::size_t count) {
  std::vector<double> all;
  const std::size_t per = std::max<std::size_t>(1, count / c.segments().size());
  for (const auto& s : c.segments()) {
    auto part = sample_curvature(s, p, per);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

}  // namespace detail

/// Generalized curvature at `count` points along a curve (left-normal sign).
inline std::vector<double> sample_generalized_curvature(const BoundaryCurve& c, DensityExponent p,
                                                        std::size_t count = kCurvatureSamples) {
  return detail::sample_curvature(c, p, count);
}

/// Checks the equilibrium conditions: 120 degree meetings off the origin,
/// constant generalized curvature along every boundary piece, and a
/// consistent pressure per region (the curvature cocycle).
inline EquilibriumReport check_equilibrium(const DoubleBubbleCandidate& c, double tol_angle, double tol_curv) {
  if (!(tol_angle > 0.0) || !(tol_curv > 0.0)) throw ValidationError("equilibrium tolerances must be positive");
  EquilibriumReport rep;
  double scale = 1.0;
  for (const auto& e : c.edges) scale = std::max({scale, norm(e.curve.start()), norm(e.curve.end())});
  const double join = 1e-7 * scale;

  for (const Point v : c.vertices) {
    std::vector<double> dirs;
    for (const auto& e : c.edges) {
      if (distance(e.curve.start(), v) <= join) dirs.push_back(arg(start_tangent(e.curve.segments().front())));
      if (distance(e.curve.end(), v) <= join) dirs.push_back(arg(-end_tangent(e.curve.segments().back())));
    }
    std::sort(dirs.begin(), dirs.end());
    VertexAngles va{v, {}, norm(v) <= join};
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const double next = i + 1 < dirs.size() ? dirs[i + 1] : dirs.front() + 2.0 * kPi;
      va.angles.push_back(next - dirs[i]);
    }
    if (!va.at_origin) {
      if (va.angles.size() != 3) {
        rep.equilibrium = false;
        rep.reason = "vertex with " + std::to_string(va.angles.size()) + " incident pieces";
      }
      for (double a : va.angles) {
        if (std::abs(a - 2.0 * kPi / 3.0) > tol_angle && rep.equilibrium) {
          rep.equilibrium = false;
          rep.reason = "vertex angle off 120 degrees by " + detail::short_number(std::abs(a - 2.0 * kPi / 3.0));
        }
      }
    }
    rep.vertex_angles.push_back(std::move(va));
  }

  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const auto samples = detail::sample_curvature(c.edges[i].curve, c.p, kCurvatureSamples);
    const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
    rep.curvature_by_segment.push_back({i, mean, *lo, *hi});
    if (*hi - *lo > tol_curv && rep.equilibrium) {
      rep.equilibrium = false;
      rep.reason = "generalized curvature varies by " + detail::short_number(*hi - *lo) + " on piece " + std::to_string(i);
    }
  }

  // Least-squares potentials: kappa(edge) ~ P(left) - P(right), P(0) = 0.
  double m[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  double rhs[2] = {0.0, 0.0};
  auto coeff = [](const CandidateEdge& e, int region) {
    return (e.left == region ? 1.0 : 0.0) - (e.right == region ? 1.0 : 0.0);
  };
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const double g[2] = {coeff(c.edges[i], 1), coeff(c.edges[i], 2)};
    for (int a = 0; a < 2; ++a) {
      rhs[a] += g[a] * rep.curvature_by_segment[i].mean;
      for (int b = 0; b < 2; ++b) m[a][b] += g[a] * g[b];
    }
  }
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (det == 0.0) throw ValidationError("candidate edges do not determine region pressures");
  rep.potentials = {(rhs[0] * m[1][1] - m[0][1] * rhs[1]) / det, (m[0][0] * rhs[1] - m[1][0] * rhs[0]) / det};
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const double predicted = coeff(c.edges[i], 1) * rep.potentials[0] + coeff(c.edges[i], 2) * rep.potentials[1];
    rep.cocycle_residual = std::max(rep.cocycle_residual, std::abs(rep.curvature_by_segment[i].mean - predicted));
  }
  if (rep.cocycle_residual > tol_curv && rep.equilibrium) {
    rep.equilibrium = false;
    rep.reason = "curvature cocycle residual " + detail::short_number(rep.cocycle_residual);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Pinching two circles tangent at the origin. C1 has center (-R1, 0), C2 has
// center (R2, 0) and C is the circle |z| = r.

struct PinchResult {
  double saved_perimeter = 0.0;
  double added_perimeter = 0.0;
  double delta = 0.0;
  /// Weighted area of the gap between C1, C2 and C above the axis, which
  /// region 1 absorbs; the deformation does not restore it.
  double area_imbalance = 0.0;
};

struct PinchSample {
  double r = 0.0;
  PinchResult result;
};

/// Perimeter saved by folding the upper arc of C1 inside C onto C2 and C,
/// and perimeter added by the arc of C between the two circles.
inline PinchResult pinch_delta(DensityExponent p, double R1, double R2, double r,
                               double tol = kDefaultQuadratureTolerance) {
  if (!(R1 > 0.0) || !(R2 > 0.0)) throw ValidationError("pinch radii must be positive");
  if (!(r > 0.0) || !(r < std::min(R1, R2))) throw ValidationError("pinch radius must lie in (0, min(R1, R2))");
  if (p.value() < 0.0) throw ValidationError("pinch needs p >= 0");
  const double theta1 = 2.0 * std::asin(r / (2.0 * R1));
  const double theta2 = 2.0 * std::asin(r / (2.0 * R2));
  const double upper1 = kPi / 2.0 + theta1 / 2.0;  // polar angle where C meets C1
  const double upper2 = kPi / 2.0 - theta2 / 2.0;  // and C2

  PinchResult out;
  out.saved_perimeter = weighted_length(BoundaryCurve(Segment{CircularArc{{-R1, 0.0}, R1, 0.0, theta1, true}}), p, tol);
  out.added_perimeter = weighted_length(BoundaryCurve(Segment{CircularArc{{0.0, 0.0}, r, upper2, upper1, true}}), p, tol);
  out.delta = out.added_perimeter - out.saved_perimeter;

  const double n = p.value() + 2.0;
  auto gap = [&](double phi) {
    const double rho = std::max({2.0 * R2 * std::cos(phi), -2.0 * R1 * std::cos(phi), 0.0});
    return (std::pow(r, n) - std::pow(std::min(rho, r), n)) / n;
  };
  const auto left = integrate_adaptive(gap, upper2, kPi / 2.0, tol / 2.0);
  const auto right = integrate_adaptive(gap, kPi / 2.0, upper1, tol / 2.0);
  out.area_imbalance = left.value + right.value;
  return out;
}

/// Log-spaced sweep of pinch_delta over [r_min, r_max].
inline std::vector<PinchSample> pinch_sweep(DensityExponent p, double R1, double R2, double r_min, double r_max,
                                            std::size_t samples) {
  if (!(r_min > 0.0) || !(r_max >= r_min) || samples < 1) throw ValidationError("invalid pinch sweep range");
  if (samples > 1 && !(r_max > r_min)) throw ValidationError("invalid pinch sweep range");
  std::vector<PinchSample> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = samples == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(samples - 1);
    const double r = r_min * std::pow(r_max / r_min, t);
    out.push_back({r, pinch_delta(p, R1, R2, r)});
  }
  return out;
}

/// Largest r* such that the pinch saves perimeter for every r in (0, r*),
/// located by a log scan and bisection; min(R1, R2) if it never stops saving.
inline double pinch_threshold(DensityExponent p, double R1, double R2) {
  const double top = std::min(R1, R2) * (1.0 - 1e-9);
  const double bottom = top * 1e-6;
  const std::size_t steps = 400;
  double prev = bottom;
  if (!(pinch_delta(p, R1, R2, bottom).delta < 0.0)) {
    throw NumericalError("pinch does not save perimeter even at the smallest radius");
  }
  for (std::size_t i = 1; i <= steps; ++i) {
    const double r = bottom * std::pow(top / bottom, static_cast<double>(i) / steps);
    if (pinch_delta(p, R1, R2, r).delta >= 0.0) {
      double lo = prev;
      double hi = r;
      while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (pinch_delta(p, R1, R2, mid).delta < 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return lo;
    }
    prev = r;
  }
  return std::min(R1, R2);
}

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("slope fit needs two or more matching points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ValidationError("slope fit needs positive data");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw ValidationError("slope fit needs distinct x values");
  return (n * sxy - sx * sy) / den;
}

}  // namespace dbubble
