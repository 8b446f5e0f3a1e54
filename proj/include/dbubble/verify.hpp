#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dbubble/candidates.hpp"
#include "dbubble/cgc_ode.hpp"
#include "dbubble/equilibrium.hpp"
#include "dbubble/measure.hpp"
#include "dbubble/transforms.hpp"

// Property suites shared by the `verify` command and the test binaries. Every
// randomized check uses a fixed seed so runs are reproducible.

namespace dbubble::verify {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct PropertyResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

inline constexpr std::uint64_t kSeed = 20240611;

namespace detail {

using dbubble::detail::short_number;

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline Outcome bound(double worst, double limit, const std::string& what) {
  return {worst <= limit, what + " " + short_number(worst) + " (limit " + short_number(limit) + ")"};
}

/// rho(t) = c0 + a1 cos(t + b1) + a2 cos(2t + b2), strictly positive.
struct StarLoop {
  double c0 = 1.0, a1 = 0.0, b1 = 0.0, a2 = 0.0, b2 = 0.0;

  double rho(double t) const { return c0 + a1 * std::cos(t + b1) + a2 * std::cos(2.0 * t + b2); }
  double drho(double t) const { return -a1 * std::sin(t + b1) - 2.0 * a2 * std::sin(2.0 * t + b2); }

  BoundaryCurve curve(std::size_t intervals = 1024) const {
    auto z = [this](double t) { return from_polar(rho(t), t); };
    auto dz = [this](double t) { return from_polar(drho(t), t) + from_polar(rho(t), t + kPi / 2.0); };
    return BoundaryCurve(Segment{sample_parametric(z, dz, 0.0, 2.0 * kPi, intervals)}, true);
  }

  /// Weighted area from the polar formula, an oracle independent of the
  /// boundary identity.
  double polar_area(DensityExponent p) const {
    const double n = p.value() + 2.0;
    return integrate_adaptive([&](double t) { return std::pow(rho(t), n) / n; }, 0.0, 2.0 * kPi, 1e-14).value;
  }
};

inline StarLoop random_star(std::mt19937_64& rng, double min_radius = 1.0, double spread = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  StarLoop s;
  s.a1 = 0.3 * spread * u(rng);
  s.a2 = 0.2 * spread * u(rng);
  s.c0 = min_radius + s.a1 + s.a2 + spread * u(rng);
  s.b1 = 2.0 * kPi * u(rng);
  s.b2 = 2.0 * kPi * u(rng);
  return s;
}

/// Open chain of line segments staying at least `clearance` from the origin.
inline BoundaryCurve random_chain(std::mt19937_64& rng, std::size_t pieces, double clearance) {
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (;;) {
    std::vector<Segment> segs;
    Point a = from_polar(radius(rng), angle(rng));
    for (std::size_t i = 0; i < pieces; ++i) {
      const Point b = from_polar(radius(rng), angle(rng));
      segs.push_back(LineSegment{a, b});
      a = b;
    }
    BoundaryCurve c(std::move(segs));
    if (c.min_distance_to_origin() > clearance) return c;
  }
}

inline double euclidean_length(const BoundaryCurve& c) { return weighted_length(c, DensityExponent(0.0), 1e-12); }

}  // namespace detail

// ---------------------------------------------------------------------------
// measure

inline Outcome area_matches_polar_oracle(double limit = 1e-9) {
  std::mt19937_64 rng(kSeed);
  double worst = 0.0;
  for (double p : {0.0, 1.0, 2.5, 5.0}) {
    for (int i = 0; i < 4; ++i) {
      const auto star = detail::random_star(rng);
      const DensityExponent d(p);
      worst = std::max(worst, detail::rel_err(weighted_area(star.curve(), d), star.polar_area(d)));
    }
  }
  return detail::bound(worst, limit, "max relative error");
}

inline Outcome measure_scaling(double limit = 1e-9) {
  std::mt19937_64 rng(kSeed + 1);
  double worst = 0.0;
  for (double p : {0.5, 2.0, 4.0}) {
    const DensityExponent d(p);
    const auto loop = detail::random_star(rng).curve();
    const double len = weighted_length(loop, d);
    const double area = weighted_area(loop, d);
    for (double lambda : {0.5, 2.0, 3.0}) {
      const auto big = scale_geometry(loop, lambda);
      worst = std::max(worst, detail::rel_err(weighted_length(big, d) / len, length_scale_factor(d, lambda)));
      worst = std::max(worst, detail::rel_err(weighted_area(big, d) / area, area_scale_factor(d, lambda)));
    }
  }
  return detail::bound(worst, limit, "max relative error");
}

inline Outcome orientation_reversal() {
  std::mt19937_64 rng(kSeed + 2);
  double worst = 0.0;
  for (double p : {0.0, 1.5, 3.0}) {
    const auto loop = detail::random_star(rng).curve();
    const DensityExponent d(p);
    worst = std::max(worst, detail::rel_err(-weighted_area(loop.reversed(), d), weighted_area(loop, d)));
  }
  return detail::bound(worst, 1e-12, "area(reversed) + area mismatch");
}

inline Outcome length_additivity() {
  double worst = 0.0;
  for (double p : {0.0, 1.0, 3.0}) {
    const DensityExponent d(p);
    const Point c{1.5, -0.5};
    const BoundaryCurve a(Segment{CircularArc{c, 1.0, 0.2, 1.3, true}});
    const BoundaryCurve b(Segment{CircularArc{c, 1.0, 1.3, 4.0, true}});
    const BoundaryCurve ab(Segment{CircularArc{c, 1.0, 0.2, 4.0, true}});
    worst = std::max(worst, detail::rel_err(weighted_length(a, d) + weighted_length(b, d), weighted_length(ab, d)));
  }
  return detail::bound(worst, 1e-10, "max relative error");
}

inline Outcome disk_closed_forms() {
  double worst = 0.0;
  for (double p : {1.0, 2.0, 5.0}) {
    const DensityExponent d(p);
    const double R = 0.8;
    const BoundaryCurve circle(Segment{CircularArc::full_circle({R, 0.0}, R, kPi)}, true);
    worst = std::max(worst, detail::rel_err(weighted_length(circle, d), disk_through_origin_perimeter(d, R)));
    worst = std::max(worst, detail::rel_err(weighted_area(circle, d), disk_through_origin_area(d, R)));
  }
  return detail::bound(worst, 1e-9, "max relative error");
}

// ---------------------------------------------------------------------------
// cgc-ode

/// Largest deviation from the circle of radius 1 centred at (0, 1), which has
/// constant generalized curvature 2 at p = 2. Both halves are integrated from
/// the top point (0, 2) toward the origin and stop `gap` away from it.
struct CircleOracle {
  double deviation = 0.0;
  double closest_radius = 0.0;
  int steps = 0;
};

inline CircleOracle circle_oracle(double gap, const IntegratorOptions& opts = {}) {
  const DensityExponent p(2.0);
  const Point center{0.0, 1.0};
  const double length = kPi - 2.0 * std::asin(gap / 2.0);
  CircleOracle out;
  out.closest_radius = std::numeric_limits<double>::infinity();
  // Counterclockwise half (centre on the left) and clockwise half.
  for (const auto& [phi, kappa] : {std::pair{kPi, 2.0}, std::pair{0.0, -2.0}}) {
    const auto arc = integrate_cgc({0.0, 2.0, phi, 0.0}, kappa, p, StopCondition::arclength(length), opts);
    out.steps += arc.steps;
    for (const auto& q : arc.curve.sample_points(opts.sample_intervals)) {
      out.deviation = std::max(out.deviation, std::abs(distance(q, center) - 1.0));
    }
    out.deviation = std::max(out.deviation, std::abs(distance(arc.end.position(), center) - 1.0));
    out.closest_radius = std::min(out.closest_radius, norm(arc.end.position()));
  }
  return out;
}

inline Outcome circle_oracle_window(double gap = 0.05, double limit = 1e-8) {
  const auto r = circle_oracle(gap);
  return detail::bound(r.deviation, limit, "deviation down to r = " + detail::short_number(gap) + ":");
}

inline Outcome euclidean_circle() {
  const auto arc = integrate_cgc({1.0, 0.0, kPi / 2.0, 0.0}, 1.0, DensityExponent(0.0),
                                 StopCondition::arclength(2.0 * kPi));
  double worst = 0.0;
  for (const auto& q : arc.curve.sample_points(512)) worst = std::max(worst, std::abs(norm(q) - 1.0));
  return detail::bound(worst, 1e-9, "deviation from the unit circle");
}

inline Outcome straight_line() {
  const auto arc = integrate_cgc({0.3, 0.7, 0.4, 0.0}, 0.0, DensityExponent(0.0), StopCondition::arclength(3.0));
  const Point dir = from_polar(1.0, 0.4);
  double worst = 0.0;
  for (const auto& q : arc.curve.sample_points(256)) worst = std::max(worst, std::abs(cross(dir, q - Point{0.3, 0.7})));
  return detail::bound(worst, 1e-12, "distance from the line");
}

namespace detail {

inline double curvature_spread(const BoundaryCurve& c, DensityExponent p, double target) {
  double worst = 0.0;
  for (double k : sample_generalized_curvature(c, p)) worst = std::max(worst, std::abs(k - target));
  return worst;
}

inline IntegratedArc sample_arc() {
  return integrate_cgc(symmetric_launch_state(), -1.5, DensityExponent(3.0), StopCondition::arclength(2.0));
}

}  // namespace detail

inline Outcome kappa_constancy() {
  const auto arc = detail::sample_arc();
  return detail::bound(detail::curvature_spread(arc.curve, DensityExponent(3.0), -1.5), 1e-9,
                       "max |kappa_f - target|");
}

inline Outcome mirror_symmetry() {
  // Reflection flips the left normal; reversing the traversal restores it.
  const auto arc = detail::sample_arc();
  return detail::bound(detail::curvature_spread(arc.curve.mirrored().reversed(), DensityExponent(3.0), -1.5), 1e-9,
                       "max |kappa_f - target| on the mirror image");
}

inline Outcome residual_monotone() {
  const DensityExponent p(2.0);
  const auto shot = shoot_symmetric_arc(p);
  std::vector<double> values;
  for (int k = -3; k <= 3; ++k) {
    const auto r = landing_residual(shot.kappa_f + 1e-3 * k, p);
    if (!r) return {false, "landing residual undefined near the root"};
    values.push_back(*r);
  }
  const bool up = std::is_sorted(values.begin(), values.end());
  const bool down = std::is_sorted(values.rbegin(), values.rend());
  return {up || down, std::string(up || down ? "monotone" : "not monotone") + " on kappa_f +- 3e-3 around " +
                          detail::short_number(shot.kappa_f)};
}

inline Outcome shooting_lands() {
  const auto shot = shoot_symmetric_arc(DensityExponent(2.0));
  const bool ok = std::abs(shot.landing_residual) <= 1e-10 && distance(shot.arc.start(), {0.0, 1.0}) == 0.0 &&
                  std::abs(shot.arc.end().x) <= 1e-10 && shot.bottom_vertex_y < 1.0;
  return {ok, "residual " + detail::short_number(shot.landing_residual) + ", bottom vertex y " +
                  detail::short_number(shot.bottom_vertex_y)};
}

// ---------------------------------------------------------------------------
// candidates

inline Outcome candidate_scaling(double limit = 1e-7, double p = 2.0) {
  double worst = 0.0;
  const DensityExponent d(p);
  for (auto kind : kAllCandidateKinds) {
    const auto base = build_candidate(kind, d, 1.0, 1.0);
    for (double lambda : {0.5, 2.0}) {
      const double s = area_scale_factor(d, lambda);
      const auto big = build_candidate(kind, d, s, s);
      worst = std::max(worst,
                       detail::rel_err(big.weighted_perimeter / base.weighted_perimeter, length_scale_factor(d, lambda)));
      const auto moved = scale_candidate(base, lambda);
      worst = std::max(worst, detail::rel_err(moved.weighted_areas[0] / base.weighted_areas[0], s));
      worst = std::max(worst, detail::rel_err(moved.weighted_perimeter / base.weighted_perimeter,
                                              length_scale_factor(d, lambda)));
    }
  }
  return detail::bound(worst, limit, "max relative error");
}

inline Outcome area_fidelity() {
  const DensityExponent p(3.0);
  double worst = 0.0;
  for (auto kind : kAllCandidateKinds) {
    const double a1 = kind == CandidateKind::symmetric ? 1.2 : 1.5;
    const double a2 = kind == CandidateKind::symmetric ? 1.2 : 1.0;
    const auto c = build_candidate(kind, p, a1, a2);
    worst = std::max(worst, detail::rel_err(dbubble::detail::region_area(c.region1, p, c.quadrature_tol), a1));
    worst = std::max(worst, detail::rel_err(dbubble::detail::region_area(c.region2, p, c.quadrature_tol), a2));
  }
  return detail::bound(worst, kDefaultConstructionTolerance, "max relative area error");
}

inline Outcome standard_dominates() {
  std::vector<double> ps;
  for (int p = 1; p <= 10; ++p) ps.push_back(p);
  const auto table = perimeter_table(ps);
  if (!table.complete()) return {false, "table has failed cells"};
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& row : table.rows) {
    const double s = *row.cell(CandidateKind::standard).value;
    for (auto kind : {CandidateKind::symmetric, CandidateKind::two_circles, CandidateKind::concentric}) {
      margin = std::min(margin, *row.cell(kind).value - s);
    }
  }
  return {margin > 0.0, "smallest margin over the standard candidate " + detail::short_number(margin)};
}

inline Outcome two_circles_decomposition() {
  double worst = 0.0;
  double gap = 0.0;
  for (double p : {1.0, 2.0, 6.0}) {
    const DensityExponent d(p);
    const auto c = build_two_circles(d, 1.0, 0.4);
    const double sum = disk_through_origin_perimeter(d, c.parameter("R1")) +
                       disk_through_origin_perimeter(d, c.parameter("R2"));
    worst = std::max(worst, detail::rel_err(c.weighted_perimeter, sum));
    for (const auto& e : c.edges) {
      const auto& arc = std::get<CircularArc>(e.curve.segments().front());
      gap = std::max(gap, std::abs(norm(arc.center) - arc.radius));
    }
  }
  const bool ok = worst <= 1e-9 && gap <= 1e-10;
  return {ok, "perimeter error " + detail::short_number(worst) + ", origin distance " + detail::short_number(gap)};
}

inline Outcome rotation_invariance() {
  const DensityExponent p(2.0);
  double worst = 0.0;
  for (auto kind : {CandidateKind::standard, CandidateKind::symmetric, CandidateKind::two_circles}) {
    const auto c = build_candidate(kind, p, 1.0, 1.0);
    const auto r = rotate_candidate(c, 0.7);
    worst = std::max(worst, detail::rel_err(r.weighted_perimeter, c.weighted_perimeter));
    worst = std::max(worst, detail::rel_err(r.weighted_areas[0], c.weighted_areas[0]));
    worst = std::max(worst, detail::rel_err(r.weighted_areas[1], c.weighted_areas[1]));
  }
  return detail::bound(worst, 1e-9, "max relative change");
}

inline double euclidean_double_bubble_perimeter() {
  return (8.0 * kPi / 3.0 + std::sqrt(3.0)) / std::sqrt(2.0 * kPi / 3.0 + std::sqrt(3.0) / 4.0);
}

inline Outcome euclidean_limit(double limit_closed = 1e-4, double limit_pair = 1e-6) {
  const DensityExponent p(0.0);
  const double s = build_standard(p, 1.0, 1.0).weighted_perimeter;
  const double y = build_symmetric(p, 1.0).weighted_perimeter;
  const double exact = euclidean_double_bubble_perimeter();
  const double closed = std::max(std::abs(s - exact), std::abs(y - exact));
  const double pair = std::abs(s - y);
  return {closed <= limit_closed && pair <= limit_pair,
          "vs closed form " + detail::short_number(closed) + ", standard vs symmetric " + detail::short_number(pair)};
}

// ---------------------------------------------------------------------------
// equilibrium

inline Outcome curvature_scaling() {
  std::mt19937_64 rng(kSeed + 3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const DensityExponent p(std::abs(u(rng)) * 2.0);
    const Point c{u(rng), u(rng)};
    const double R = 0.5 + std::abs(u(rng));
    const Point z = c + from_polar(R, u(rng) * kPi);
    if (norm(z) < 1e-3) continue;
    const double k = circle_generalized_curvature(c, R, z, p);
    for (double lambda : {0.25, 3.0}) {
      const double kl = circle_generalized_curvature(lambda * c, lambda * R, lambda * z, p);
      worst = std::max(worst, std::abs(kl * lambda - k) / std::max(1.0, std::abs(k)));
    }
  }
  return detail::bound(worst, 1e-12, "max relative error");
}

/// Sampled variation on circles through and centred at the origin, and on
/// the control circle centred at (3, 0).
struct CircleVariation {
  double through = 0.0;
  double centered = 0.0;
  double control = 0.0;
};

inline CircleVariation circle_variation(double p_value = 2.0) {
  const DensityExponent p(p_value);
  auto spread = [&](Point c, double R, double from, double to) {
    std::vector<double> k;
    for (int i = 0; i < static_cast<int>(kCurvatureSamples); ++i) {
      const double th = from + (to - from) * (i + 0.5) / kCurvatureSamples;
      k.push_back(circle_generalized_curvature(c, R, c + from_polar(R, th), p));
    }
    return *std::max_element(k.begin(), k.end()) - *std::min_element(k.begin(), k.end());
  };
  // The through-origin circle is sampled away from the origin itself.
  return {spread({0.0, 1.3}, 1.3, -kPi / 2.0 + 1e-3, 3.0 * kPi / 2.0 - 1e-3), spread({0.0, 0.0}, 0.7, 0.0, 2.0 * kPi),
          spread({3.0, 0.0}, 1.0, 0.0, 2.0 * kPi)};
}

inline Outcome circle_constancy() {
  double flat = 0.0;
  double control = std::numeric_limits<double>::infinity();
  for (double p : {0.5, 2.0, 5.0}) {
    const auto v = circle_variation(p);
    flat = std::max({flat, v.through, v.centered});
    control = std::min(control, v.control);
  }
  return {flat <= 1e-10 && control >= 1e-3,
          "origin circles " + detail::short_number(flat) + ", control circle " + detail::short_number(control)};
}

inline Outcome symbolic_cocycle() {
  std::mt19937_64 rng(kSeed + 4);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double a = u(rng), b = u(rng);
    worst = std::max(worst, std::abs(standard_cocycle_symbolic(DensityExponent(u(rng) * 3.0), std::max(a, b),
                                                               std::min(a, b))));
  }
  return detail::bound(worst, 1e-12, "max residual");
}

struct StandardEquilibrium {
  double angle_error = 0.0;
  double variation = 0.0;
  double cocycle = 0.0;
  bool verdict = true;
};

inline StandardEquilibrium standard_equilibrium(const std::vector<double>& ps) {
  StandardEquilibrium out;
  for (double p : ps) {
    const auto c = build_standard(DensityExponent(p), 1.0, 1.0);
    const auto rep = check_equilibrium(c, 1e-6, 1e-8);
    out.verdict = out.verdict && rep.equilibrium;
    for (const auto& v : rep.vertex_angles) {
      if (v.at_origin) continue;
      for (double a : v.angles) out.angle_error = std::max(out.angle_error, std::abs(a - 2.0 * kPi / 3.0));
    }
    for (const auto& s : rep.curvature_by_segment) out.variation = std::max(out.variation, s.variation());
    out.cocycle = std::max(out.cocycle, rep.cocycle_residual);
  }
  return out;
}

inline Outcome standard_in_equilibrium() {
  const auto r = standard_equilibrium({0.5, 1.0, 2.0, 5.0, 10.0});
  const bool ok = r.verdict && r.angle_error <= 1e-6 && r.variation <= 1e-8 && r.cocycle <= 1e-9;
  return {ok, "angle error " + detail::short_number(r.angle_error) + ", kappa_f variation " +
                  detail::short_number(r.variation) + ", cocycle " + detail::short_number(r.cocycle)};
}

inline Outcome round_candidates_in_equilibrium() {
  for (double p : {1.0, 4.0}) {
    for (auto kind : {CandidateKind::concentric, CandidateKind::two_circles}) {
      const auto rep = check_equilibrium(build_candidate(kind, DensityExponent(p), 1.0, 1.0), 1e-6, 1e-8);
      if (!rep.equilibrium) return {false, std::string(to_string(kind)) + ": " + rep.reason};
    }
  }
  return {true, "concentric and two-circles pass"};
}

inline Outcome pinch_saves_below_threshold() {
  const DensityExponent p(2.0);
  const double star = pinch_threshold(p, 1.0, 1.0);
  if (!(star > 0.0)) return {false, "no threshold found"};
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& s : pinch_sweep(p, 1.0, 1.0, 1e-4, 0.999 * star, 40)) worst = std::max(worst, s.result.delta);
  return {worst < 0.0, "r* = " + detail::short_number(star) + ", largest delta below it " + detail::short_number(worst)};
}

struct PinchOrders {
  double saved_slope = 0.0;
  double added_slope = 0.0;
  double worst_delta = 0.0;  // largest delta for r <= 0.05
};

inline PinchOrders pinch_orders(double p_value = 2.0) {
  const DensityExponent p(p_value);
  PinchOrders out;
  std::vector<double> r, saved, added;
  for (const auto& s : pinch_sweep(p, 1.0, 1.0, 1e-3, 1e-1, 25)) {
    r.push_back(s.r);
    saved.push_back(s.result.saved_perimeter);
    added.push_back(s.result.added_perimeter);
  }
  out.saved_slope = loglog_slope(r, saved);
  out.added_slope = loglog_slope(r, added);
  out.worst_delta = -std::numeric_limits<double>::infinity();
  for (const auto& s : pinch_sweep(p, 1.0, 1.0, 1e-4, 0.05, 40)) out.worst_delta = std::max(out.worst_delta, s.result.delta);
  return out;
}

inline Outcome pinch_slopes() {
  const auto o = pinch_orders(2.0);
  const bool ok = std::abs(o.saved_slope - 3.0) <= 0.1 && std::abs(o.added_slope - 4.0) <= 0.1 && o.worst_delta < 0.0;
  return {ok, "slopes " + detail::short_number(o.saved_slope) + " and " + detail::short_number(o.added_slope) +
                  ", largest delta " + detail::short_number(o.worst_delta)};
}

// ---------------------------------------------------------------------------
// transforms

inline Outcome area_cone_isometry(double limit = 1e-9) {
  std::mt19937_64 rng(kSeed + 5);
  double worst = 0.0;
  for (double p : {0.5, 1.0, 2.0, 3.0}) {
    for (int i = 0; i < 5; ++i) {
      const auto chain = detail::random_chain(rng, 4, 0.2);
      const DensityExponent d(p);
      const auto image = map_curve_to_area_cone(chain, d);
      worst = std::max(worst, detail::rel_err(detail::euclidean_length(image), weighted_length(chain, d, 1e-12)));
    }
  }
  return detail::bound(worst, limit, "max relative error");
}

inline Outcome perimeter_cone_area_equality(double limit = 1e-8) {
  std::mt19937_64 rng(kSeed + 6);
  double worst = 0.0;
  for (double p : {0.5, 1.0, 2.0, 4.0}) {
    for (int i = 0; i < 5; ++i) {
      const auto loop = detail::random_star(rng, 0.5).curve();
      const DensityExponent d(p);
      const auto image = map_curve_to_perimeter_cone(loop, d);
      worst = std::max(worst, detail::rel_err(cone_swept_area(image, 1e-12), weighted_area(loop, d, 1e-12)));
    }
  }
  return detail::bound(worst, limit, "max relative error");
}

inline Outcome perimeter_cone_length_relation() {
  double worst = 0.0;
  for (double p : {1.0, 2.0, 4.0}) {
    const DensityExponent d(p);
    const BoundaryCurve radial(Segment{LineSegment{{1.0, 0.0}, {2.0, 0.0}}});
    const auto image = map_curve_to_perimeter_cone(radial, d);
    const double image_length = weighted_length(image, DensityExponent(p / (p + 2.0)), 1e-12);
    worst = std::max(worst, detail::rel_err(image_length, perimeter_cone_length_factor(d) * weighted_length(radial, d)));
  }
  return detail::bound(worst, 1e-9, "max relative error");
}

inline Outcome geodesic_examples(double limit = 1e-9) {
  const auto g1 = geodesic(DensityExponent(2.0), {1.0, 0.0}, {0.0, 0.0});
  const auto g2 = geodesic(DensityExponent(1.0), {1.0, 0.0}, {0.0, 1.0});
  const auto g3 = geodesic(DensityExponent(1.0), {1.0, 0.0}, {std::cos(0.1), std::sin(0.1)});
  const double err = std::max({std::abs(g1.weighted_length - 1.0 / 3.0), std::abs(g2.weighted_length - 1.0),
                               std::abs(g3.weighted_length - std::sin(0.1))});
  const bool kinds = g1.kind == GeodesicKind::segment_to_origin && g2.kind == GeodesicKind::two_segments_via_origin &&
                     g3.kind == GeodesicKind::cone_chord;
  return {kinds && err <= limit, std::string(kinds ? "kinds match" : "kind mismatch") + ", max length error " +
                                     detail::short_number(err)};
}

inline Outcome geodesic_minimality() {
  std::mt19937_64 rng(kSeed + 7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double excess = -std::numeric_limits<double>::infinity();
  double path_err = 0.0;
  for (int i = 0; i < 40; ++i) {
    const DensityExponent p(3.0 * u(rng));
    const Point a = from_polar(0.2 + 2.0 * u(rng), 2.0 * kPi * u(rng));
    const Point b = from_polar(0.2 + 2.0 * u(rng), 2.0 * kPi * u(rng));
    const auto g = geodesic(p, a, b);
    excess = std::max(excess, g.weighted_length - g.via_origin_length);
    if (std::isfinite(g.chord_length)) excess = std::max(excess, g.weighted_length - g.chord_length);
    path_err = std::max(path_err, std::abs(weighted_length(g.path, p, 1e-12) - g.weighted_length));
  }
  return {excess <= 0.0 && path_err <= 1e-9,
          "max excess over a candidate " + detail::short_number(excess) + ", path length error " +
              detail::short_number(path_err)};
}

/// Largest jump in geodesic length across (p+1) dtheta = pi, sampled on a
/// sweep that straddles the classification boundary.
inline double geodesic_boundary_jump(double p_value = 1.0) {
  const DensityExponent p(p_value);
  const Point a{1.0, 0.0};
  const double edge = kPi / (p_value + 1.0);
  double jump = 0.0;
  for (double h : {1e-6, 1e-9, 1e-12}) {
    const double below = geodesic(p, a, from_polar(1.3, edge - h)).weighted_length;
    const double above = geodesic(p, a, from_polar(1.3, edge + h)).weighted_length;
    jump = std::max(jump, std::abs(above - below));
  }
  return jump;
}

inline Outcome geodesic_continuity(double limit = 1e-8) {
  return detail::bound(geodesic_boundary_jump(1.0), limit, "largest jump across the boundary");
}

inline Outcome phi_eps_jacobian_unit(double limit = 1e-10) {
  std::mt19937_64 rng(kSeed + 8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double eps = 0.5;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Point z = from_polar(std::sqrt(eps) * (1.01 + 3.0 * u(rng)), 2.0 * kPi * u(rng));
    worst = std::max(worst, std::abs(phi_eps_jacobian(z, eps).det() - 1.0));
  }
  return detail::bound(worst, limit, "max |det - 1|");
}

inline double annulus_area_after_phi(double eps) {
  const DensityExponent flat(0.0);
  const BoundaryCurve outer(Segment{CircularArc::full_circle({0.0, 0.0}, 3.0)}, true);
  const BoundaryCurve inner = BoundaryCurve(Segment{CircularArc::full_circle({0.0, 0.0}, 2.0)}, true).reversed();
  return weighted_area(apply_phi_eps(outer, eps), flat, 1e-12) + weighted_area(apply_phi_eps(inner, eps), flat, 1e-12);
}

inline Outcome phi_eps_area(double limit = 1e-9) {
  return detail::bound(detail::rel_err(annulus_area_after_phi(1.0), 5.0 * kPi), limit, "relative area change");
}

inline Outcome phi_eps_decreases_length() {
  std::mt19937_64 rng(kSeed + 9);
  const double eps = 0.25;
  int failures = 0;
  double smallest = std::numeric_limits<double>::infinity();
  for (double k : {1.5, 2.0, 3.0}) {
    for (int i = 0; i < 20; ++i) {
      const auto curve = detail::random_star(rng, 2.0 * std::sqrt(eps) * 1.05).curve(512);
      const DensityExponent d(k);
      const double before = weighted_length(curve, d, 1e-11);
      const double after = weighted_length(apply_phi_eps(curve, eps), d, 1e-11);
      smallest = std::min(smallest, (before - after) / before);
      if (!(after < before)) ++failures;
    }
  }
  return {failures == 0, std::to_string(failures) + " of 60 curves fail; smallest relative decrease " +
                             detail::short_number(smallest)};
}

// ---------------------------------------------------------------------------
// Suite registry.

struct Property {
  std::string_view name;
  std::function<Outcome()> run;
};

struct Suite {
  std::string_view name;
  std::vector<Property> properties;
};

inline const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"measure",
       {{"area-matches-polar-oracle", [] { return area_matches_polar_oracle(); }},
        {"scaling-laws", [] { return measure_scaling(); }},
        {"orientation-reversal", orientation_reversal},
        {"length-additivity", length_additivity},
        {"disk-closed-forms", disk_closed_forms}}},
      {"cgc-ode",
       {{"circle-oracle-outside-r-0.05", [] { return circle_oracle_window(); }},
        {"euclidean-circle", euclidean_circle},
        {"straight-line", straight_line},
        {"kappa-constancy", kappa_constancy},
        {"mirror-symmetry", mirror_symmetry},
        {"shooting-lands", shooting_lands},
        {"residual-monotone-near-root", residual_monotone}}},
      {"candidates",
       {{"scaling-covariance", [] { return candidate_scaling(); }},
        {"area-fidelity", area_fidelity},
        {"standard-dominates", standard_dominates},
        {"two-circles-decomposition", two_circles_decomposition},
        {"rotation-invariance", rotation_invariance},
        {"euclidean-limit", [] { return euclidean_limit(); }}}},
      {"equilibrium",
       {{"curvature-scaling", curvature_scaling},
        {"circle-constancy", circle_constancy},
        {"symbolic-cocycle", symbolic_cocycle},
        {"standard-in-equilibrium", standard_in_equilibrium},
        {"round-candidates-in-equilibrium", round_candidates_in_equilibrium},
        {"pinch-saves-below-threshold", pinch_saves_below_threshold},
        {"pinch-orders", pinch_slopes}}},
      {"transforms",
       {{"area-cone-isometry", [] { return area_cone_isometry(); }},
        {"perimeter-cone-area-equality", [] { return perimeter_cone_area_equality(); }},
        {"perimeter-cone-length-relation", perimeter_cone_length_relation},
        {"geodesic-examples", [] { return geodesic_examples(); }},
        {"geodesic-minimality", geodesic_minimality},
        {"geodesic-continuity", [] { return geodesic_continuity(); }},
        {"phi-eps-jacobian", [] { return phi_eps_jacobian_unit(); }},
        {"phi-eps-area", [] { return phi_eps_area(); }},
        {"phi-eps-length-decrease", phi_eps_decreases_length}}},
  };
  return all;
}

inline std::vector<std::string_view> suite_names() {
  std::vector<std::string_view> names;
  for (const auto& s : suites()) names.push_back(s.name);
  return names;
}

/// Runs one suite, or every suite when `name` is empty. Exceptions inside a
/// property count as failures.
inline std::vector<PropertyResult> run(std::string_view name = {}) {
  std::vector<PropertyResult> out;
  bool found = name.empty();
  for (const auto& suite : suites()) {
    if (!name.empty() && suite.name != name) continue;
    found = true;
    for (const auto& prop : suite.properties) {
      PropertyResult r{std::string(suite.name), std::string(prop.name), false, {}};
      try {
        const auto o = prop.run();
        r.passed = o.passed;
        r.detail = o.detail;
      } catch (const std::exception& e) {
        r.detail = std::string("error: ") + e.what();
      }
      out.push_back(std::move(r));
    }
  }
  if (!found) {
    std::string known;
    for (auto n : suite_names()) known += (known.empty() ? "" : ", ") + std::string(n);
    throw ValidationError("unknown suite '" + std::string(name) + "' (known: " + known + ")");
  }
  return out;
}

}  // namespace dbubble::verify
