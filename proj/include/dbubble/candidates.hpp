#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dbubble/cgc_ode.hpp"
#include "dbubble/error.hpp"
#include "dbubble/geometry.hpp"
#include "dbubble/measure.hpp"

namespace dbubble {

enum class CandidateKind { standard, symmetric, two_circles, concentric };

inline constexpr std::array<CandidateKind, 4> kAllCandidateKinds = {
    CandidateKind::standard, CandidateKind::symmetric, CandidateKind::two_circles,
    CandidateKind::concentric};

inline std::string_view to_string(CandidateKind k) {
  switch (k) {
    case CandidateKind::standard: return "standard";
    case CandidateKind::symmetric: return "symmetric";
    case CandidateKind::two_circles: return "two-circles";
    case CandidateKind::concentric: return "concentric";
  }
  return "unknown";
}

inline CandidateKind parse_candidate_kind(std::string_view s) {
  for (auto k : kAllCandidateKinds) {
    if (to_string(k) == s) return k;
  }
  throw ValidationError("unknown candidate kind '" + std::string(s) + "'");
}

/// Default tolerance on constructed weighted areas.
inline constexpr double kDefaultConstructionTolerance = 1e-8;

/// Boundary piece with the regions on either side of its direction of travel.
/// Region ids: 0 exterior, 1 and 2 the bubbles.
struct CandidateEdge {
  BoundaryCurve curve;
  int left = 0;
  int right = 0;

  bool is_interface() const { return left != 0 && right != 0; }
};

/// A region as signed loops; the annulus has an outer loop and a clockwise hole.
struct Region {
  std::vector<BoundaryCurve> loops;
};

struct DoubleBubbleCandidate {
  CandidateKind kind = CandidateKind::standard;
  DensityExponent p;
  Region region1;
  Region region2;
  std::vector<CandidateEdge> edges;
  /// Indices into `edges` of pieces shared by the two regions.
  std::vector<std::size_t> interface;
  /// Points where three boundary pieces meet.
  std::vector<Point> vertices;
  std::array<double, 2> weighted_areas{};
  double weighted_perimeter = 0.0;
  /// Construction constants (radii, curvatures) in a fixed order for reports.
  std::vector<std::pair<std::string, double>> parameters;
  double quadrature_tol = kDefaultQuadratureTolerance;

  double parameter(std::string_view name) const {
    for (const auto& [k, v] : parameters) {
      if (k == name) return v;
    }
    throw ValidationError("candidate has no parameter '" + std::string(name) + "'");
  }
};

namespace detail {

inline void require_positive_area(double a, const char* name) {
  if (!(a > 0.0) || !std::isfinite(a)) throw ValidationError(std::string(name) + " must be positive");
}

inline void require_tol(double tol) {
  if (!(tol > 0.0)) throw ValidationError("construction tolerance must be positive");
}

// Absolute quadrature tolerance that stays meaningful for large clusters.
inline double quadrature_tol_for(double total_area) {
  return kDefaultQuadratureTolerance * std::max(1.0, total_area);
}

inline double region_area(const Region& r, DensityExponent p, double qtol) {
  double sum = 0.0;
  for (const auto& loop : r.loops) sum += weighted_area(loop, p, qtol);
  return sum;
}

inline void measure(DoubleBubbleCandidate& c) {
  c.weighted_areas = {region_area(c.region1, c.p, c.quadrature_tol),
                      region_area(c.region2, c.p, c.quadrature_tol)};
  double per = 0.0;
  for (const auto& e : c.edges) per += weighted_length(e.curve, c.p, c.quadrature_tol);
  c.weighted_perimeter = per;
  c.interface.clear();
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    if (c.edges[i].is_interface()) c.interface.push_back(i);
  }
}

inline void check_areas(const DoubleBubbleCandidate& c, double a1, double a2, double tol) {
  const double e1 = std::abs(c.weighted_areas[0] - a1);
  const double e2 = std::abs(c.weighted_areas[1] - a2);
  if (!(e1 <= tol * std::max(1.0, a1)) || !(e2 <= tol * std::max(1.0, a2))) {
    throw ConstructionError(std::string(to_string(c.kind)) + ": area mismatch " + short_number(std::max(e1, e2)));
  }
}

inline BoundaryCurve join(std::initializer_list<BoundaryCurve> parts) {
  std::vector<Segment> segs;
  for (const auto& part : parts) {
    for (const auto& s : part.segments()) segs.push_back(s);
  }
  return BoundaryCurve(std::move(segs), true);
}

// W(n) = integral of cos^n over (-pi/2, pi/2).
inline double cos_power_integral(double n) {
  return std::sqrt(kPi) * std::tgamma((n + 1.0) / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

}  // namespace detail

/// Weighted area and circumference of the disk of radius R with the origin on
/// its boundary: polar form r = 2R cos(theta).
inline double disk_through_origin_area(DensityExponent p, double R) {
  const double n = p.value() + 2.0;
  return std::pow(2.0 * R, n) / n * detail::cos_power_integral(n);
}
inline double disk_through_origin_perimeter(DensityExponent p, double R) {
  return std::pow(2.0 * R, p.value() + 1.0) * detail::cos_power_integral(p.value());
}

/// Inner disk of area A1 and the surrounding annulus of area A2.
inline DoubleBubbleCandidate build_concentric(DensityExponent p, double A1, double A2,
                                              double tol = kDefaultConstructionTolerance) {
  detail::require_positive_area(A1, "A1");
  detail::require_positive_area(A2, "A2");
  detail::require_tol(tol);
  if (p.value() <= -2.0) throw ValidationError("concentric candidate needs p > -2");
  const double n = p.value() + 2.0;
  const double r1n = n * A1 / (2.0 * kPi);
  const double R1 = std::pow(r1n, 1.0 / n);
  const double R2 = std::pow(r1n + n * A2 / (2.0 * kPi), 1.0 / n);

  const BoundaryCurve inner(Segment{CircularArc{{0.0, 0.0}, R1, 0.0, 2.0 * kPi, true}}, true);
  const BoundaryCurve outer(Segment{CircularArc{{0.0, 0.0}, R2, 0.0, 2.0 * kPi, true}}, true);

  DoubleBubbleCandidate c;
  c.kind = CandidateKind::concentric;
  c.p = p;
  c.quadrature_tol = detail::quadrature_tol_for(A1 + A2);
  c.region1.loops = {inner};
  c.region2.loops = {outer, inner.reversed()};
  c.edges = {{outer, 2, 0}, {inner, 1, 2}};
  c.parameters = {{"R1", R1}, {"R2", R2}};
  detail::measure(c);
  detail::check_areas(c, A1, A2, tol);
  return c;
}

/// Closed-form perimeter of the concentric candidate.
inline double concentric_perimeter_closed_form(DensityExponent p, double R1, double R2) {
  return 2.0 * kPi * (std::pow(R1, p.value() + 1.0) + std::pow(R2, p.value() + 1.0));
}

/// Two disks through the origin, tangent there: region 1 on the left.
inline DoubleBubbleCandidate build_two_circles(DensityExponent p, double A1, double A2,
                                               double tol = kDefaultConstructionTolerance) {
  detail::require_positive_area(A1, "A1");
  detail::require_positive_area(A2, "A2");
  detail::require_tol(tol);
  if (p.value() <= -1.0) throw ValidationError("two-circles candidate needs p > -1");
  const double unit = disk_through_origin_area(p, 1.0);
  const double R1 = std::pow(A1 / unit, 1.0 / (p.value() + 2.0));
  const double R2 = std::pow(A2 / unit, 1.0 / (p.value() + 2.0));

  const BoundaryCurve c1(Segment{CircularArc{{-R1, 0.0}, R1, 0.0, 2.0 * kPi, true}}, true);
  const BoundaryCurve c2(Segment{CircularArc{{R2, 0.0}, R2, -kPi, kPi, true}}, true);

  DoubleBubbleCandidate c;
  c.kind = CandidateKind::two_circles;
  c.p = p;
  c.quadrature_tol = detail::quadrature_tol_for(A1 + A2);
  c.region1.loops = {c1};
  c.region2.loops = {c2};
  c.edges = {{c1, 1, 0}, {c2, 2, 0}};
  c.parameters = {{"R1", R1}, {"R2", R2}};
  detail::measure(c);
  detail::check_areas(c, A1, A2, tol);
  return c;
}

namespace detail {

struct StandardShape {
  BoundaryCurve outer1;
  BoundaryCurve outer2;
  BoundaryCurve interface;  // from the origin vertex up to (0, h)
  double h = 0.0;
  double interface_radius = 0.0;  // infinite for the straight chord
};

// Euclidean standard bubble with circle radii r1 >= r2, vertices at the
// origin and (0, h), region 1 on the left of the chord and region 2 on the
// right.
inline StandardShape standard_shape(double r1, double r2) {
  const double d = std::sqrt(r1 * r1 + r2 * r2 - r1 * r2);
  const double a1 = r1 * (2.0 * r1 - r2) / (2.0 * d);
  const double a2 = r2 * (2.0 * r2 - r1) / (2.0 * d);
  const double half = std::sqrt(std::max(0.0, r1 * r1 - a1 * a1));
  StandardShape s;
  s.h = 2.0 * half;
  const Point O{0.0, 0.0};
  const Point V{0.0, s.h};

  const double t1 = std::atan2(half, a1);
  s.outer1 = BoundaryCurve(Segment{CircularArc{{-a1, half}, r1, t1, 2.0 * kPi - t1, true}});
  s.outer2 = BoundaryCurve(
      Segment{CircularArc{{a2, half}, r2, std::atan2(-half, -a2), std::atan2(half, -a2), true}});

  if (std::abs(1.0 / r1 - 1.0 / r2) < 1e-12) {
    s.interface = BoundaryCurve(Segment{LineSegment{O, V}});
    s.interface_radius = std::numeric_limits<double>::infinity();
  } else {
    const double rm = 1.0 / std::abs(1.0 / r2 - 1.0 / r1);
    const double xm = std::sqrt(rm * rm - half * half);
    const double beta = std::atan2(half, xm);
    // Bulges into the larger region: clockwise about a center on the right.
    s.interface = BoundaryCurve(Segment{CircularArc{{xm, half}, rm, kPi + beta, kPi - beta, false}});
    s.interface_radius = rm;
  }
  return s;
}

inline std::array<double, 2> standard_areas(const StandardShape& s, DensityExponent p, double qtol) {
  const auto loop1 = join({s.outer1, s.interface});
  const auto loop2 = join({s.outer2, s.interface.reversed()});
  return {weighted_area(loop1, p, qtol), weighted_area(loop2, p, qtol)};
}

}  // namespace detail

/// Euclidean standard double bubble with one vertex at the origin and the
/// other on the positive y-axis; region 1 (the larger) sits left of the
/// vertex chord. With `allow_swap`, A2 > A1 is accepted and region 1 is
/// then the smaller bubble on the right.
inline DoubleBubbleCandidate build_standard(DensityExponent p, double A1, double A2,
                                            double tol = kDefaultConstructionTolerance,
                                            bool allow_swap = false) {
  detail::require_positive_area(A1, "A1");
  detail::require_positive_area(A2, "A2");
  detail::require_tol(tol);
  if (p.value() <= -1.0) throw ValidationError("standard candidate needs p > -1");
  const bool swap = A2 > A1;
  if (swap && !allow_swap) throw ValidationError("standard candidate needs A1 >= A2");
  const double big = swap ? A2 : A1;
  const double small = swap ? A1 : A2;
  const double target = small / big;
  const double qtol = kDefaultQuadratureTolerance;

  // Shape from the radius ratio t = r2/r1 with r1 = 1, then scale.
  double t = 1.0;
  if (target < 1.0) {
    auto ratio = [&](double x) {
      const auto a = detail::standard_areas(detail::standard_shape(1.0, x), p, qtol);
      return a[1] / a[0] - target;
    };
    double lo = 1e-3;
    double hi = 1.0;
    double flo = ratio(lo);
    if (!(flo < 0.0)) throw ConstructionError("standard candidate: area ratio below bracket");
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      const double fm = ratio(mid);
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    t = 0.5 * (lo + hi);
  }
  const auto unit = detail::standard_shape(1.0, t);
  const double unit_big = detail::standard_areas(unit, p, qtol)[0];
  const double lambda = std::pow(big / unit_big, 1.0 / (p.value() + 2.0));
  const double r1 = lambda;
  const double r2 = lambda * t;
  const auto shape = detail::standard_shape(r1, r2);

  DoubleBubbleCandidate c;
  c.kind = CandidateKind::standard;
  c.p = p;
  c.quadrature_tol = detail::quadrature_tol_for(A1 + A2);
  const auto loop_big = detail::join({shape.outer1, shape.interface});
  const auto loop_small = detail::join({shape.outer2, shape.interface.reversed()});
  // Region 1 always carries A1; when swapped it is the smaller bubble on the right.
  const int big_id = swap ? 2 : 1;
  const int small_id = swap ? 1 : 2;
  c.region1.loops = {swap ? loop_small : loop_big};
  c.region2.loops = {swap ? loop_big : loop_small};
  c.edges = {{shape.outer1, big_id, 0}, {shape.outer2, small_id, 0}, {shape.interface, big_id, small_id}};
  c.vertices = {{0.0, 0.0}, {0.0, shape.h}};
  c.parameters = {{"r1", r1}, {"r2", r2}, {"interface_radius", shape.interface_radius}, {"vertex_height", shape.h}};
  detail::measure(c);
  detail::check_areas(c, A1, A2, tol);
  return c;
}

/// Mirror-symmetric candidate: two constant generalized curvature arcs and a
/// segment of the y-axis, each region of weighted area A.
inline DoubleBubbleCandidate build_symmetric(DensityExponent p, double A,
                                             double tol = kDefaultConstructionTolerance,
                                             const ShootingOptions& opts = {}) {
  detail::require_positive_area(A, "A");
  detail::require_tol(tol);
  const ShootingResult shot = shoot_symmetric_arc(p, opts);
  const auto right_loop = detail::symmetric_right_loop(shot.arc);
  const double rough = weighted_area_estimate(right_loop, p, kDefaultQuadratureTolerance).value;
  if (!(rough > 0.0)) throw ConstructionError("symmetric arc encloses no area");
  const double lambda = std::pow(A / rough, 1.0 / (p.value() + 2.0));

  // Right arc runs top to bottom with region 1 on its right.
  const BoundaryCurve right = shot.arc.scaled(lambda);
  const BoundaryCurve left = right.mirrored();
  const BoundaryCurve axis(Segment{LineSegment{right.start(), right.end()}});

  DoubleBubbleCandidate c;
  c.kind = CandidateKind::symmetric;
  c.p = p;
  c.quadrature_tol = detail::quadrature_tol_for(2.0 * A);
  c.region1.loops = {detail::join({axis, right.reversed()})};
  c.region2.loops = {detail::join({left, axis.reversed()})};
  c.edges = {{right.reversed(), 1, 0}, {left, 2, 0}, {axis, 1, 2}};
  c.vertices = {right.start(), right.end()};
  c.parameters = {{"kappa_f", shot.kappa_f / lambda},
                  {"scale", lambda},
                  {"landing_residual", shot.landing_residual},
                  {"bottom_vertex_y", shot.bottom_vertex_y * lambda},
                  {"shooting_roots", static_cast<double>(shot.roots.size())}};
  detail::measure(c);
  detail::check_areas(c, A, A, tol);
  return c;
}

/// Builds the requested kind; the symmetric candidate requires A1 == A2.
inline DoubleBubbleCandidate build_candidate(CandidateKind kind, DensityExponent p, double A1, double A2,
                                             double tol = kDefaultConstructionTolerance) {
  switch (kind) {
    case CandidateKind::standard: return build_standard(p, A1, A2, tol, true);
    case CandidateKind::symmetric:
      if (A1 != A2) throw ValidationError("symmetric candidate needs equal areas");
      return build_symmetric(p, A1, tol);
    case CandidateKind::two_circles: return build_two_circles(p, A1, A2, tol);
    case CandidateKind::concentric: return build_concentric(p, A1, A2, tol);
  }
  throw ValidationError("unknown candidate kind");
}

/// Applies a similarity map about the origin and re-measures from geometry.
inline DoubleBubbleCandidate transform_candidate(const DoubleBubbleCandidate& c, const LinearMap& m) {
  DoubleBubbleCandidate out = c;
  for (auto& l : out.region1.loops) l = l.transformed(m);
  for (auto& l : out.region2.loops) l = l.transformed(m);
  for (auto& e : out.edges) {
    e.curve = e.curve.transformed(m);
    // Orientation-reversing maps swap the sides of every edge.
    if (m.det() < 0.0) std::swap(e.left, e.right);
  }
  for (auto& v : out.vertices) v = m(v);
  if (m.det() < 0.0) {
    for (auto& l : out.region1.loops) l = l.reversed();
    for (auto& l : out.region2.loops) l = l.reversed();
  }
  const double s = std::sqrt(std::abs(m.det()));
  out.quadrature_tol = c.quadrature_tol * std::max(1.0, std::pow(s, c.p.value() + 2.0));
  detail::measure(out);
  return out;
}

inline DoubleBubbleCandidate scale_candidate(const DoubleBubbleCandidate& c, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("scale factor must be positive and finite");
  return transform_candidate(c, LinearMap::scale(lambda));
}

inline DoubleBubbleCandidate rotate_candidate(const DoubleBubbleCandidate& c, double angle) {
  return transform_candidate(c, LinearMap::rotation(angle));
}

// ---------------------------------------------------------------------------
// Perimeter table at unit areas.

struct TableCell {
  std::optional<double> value;
  std::string error;
};

struct PerimeterRow {
  double p = 0.0;
  std::array<TableCell, 4> cells;  // ordered as kAllCandidateKinds

  const TableCell& cell(CandidateKind k) const { return cells[static_cast<std::size_t>(k)]; }
};

struct PerimeterTable {
  std::vector<PerimeterRow> rows;
  bool complete() const {
    for (const auto& r : rows) {
      for (const auto& c : r.cells) {
        if (!c.value) return false;
      }
    }
    return true;
  }
};

inline PerimeterRow perimeter_row(double p, double tol = kDefaultConstructionTolerance) {
  PerimeterRow row;
  row.p = p;
  for (std::size_t i = 0; i < kAllCandidateKinds.size(); ++i) {
    try {
      row.cells[i].value = build_candidate(kAllCandidateKinds[i], DensityExponent(p), 1.0, 1.0, tol).weighted_perimeter;
    } catch (const Error& e) {
      row.cells[i].error = e.what();
    }
  }
  return row;
}

/// All four candidates at A1 = A2 = 1 for each p; rows are computed
/// concurrently and returned in input order. Builder failures are recorded
/// per cell.
inline PerimeterTable perimeter_table(const std::vector<double>& p_values,
                                      double tol = kDefaultConstructionTolerance) {
  if (p_values.empty()) throw ValidationError("perimeter table needs at least one p");
  for (double p : p_values) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ValidationError("perimeter table needs p >= 0");
  }
  std::vector<std::future<PerimeterRow>> jobs;
  jobs.reserve(p_values.size());
  for (double p : p_values) jobs.push_back(std::async(std::launch::async, perimeter_row, p, tol));
  PerimeterTable table;
  for (auto& j : jobs) table.rows.push_back(j.get());
  return table;
}

}  // namespace dbubble
