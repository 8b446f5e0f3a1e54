#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dbubble/error.hpp"
#include "dbubble/geometry.hpp"
#include "dbubble/measure.hpp"

namespace dbubble {

/// Position, tangent angle and arclength along a curve.
struct CurveState {
  double x = 0.0;
  double y = 0.0;
  double phi = 0.0;
  double s = 0.0;

  Point position() const { return {x, y}; }
  Point tangent() const { return {std::cos(phi), std::sin(phi)}; }
};

struct CurveRate {
  double dx = 0.0;
  double dy = 0.0;
  double dphi = 0.0;
};

/// Generalized curvature kappa_0 - d(log r^p)/dN of a curve element at z with
/// unit tangent t, where N is the left normal and kappa_0 the Euclidean
/// curvature measured against N.
inline double generalized_curvature(Point z, Point t, double kappa0, DensityExponent p) {
  const double r2 = dot(z, z);
  if (r2 == 0.0) throw SingularityError("generalized curvature is undefined at the origin");
  return kappa0 - p.value() * dot(left_normal(t), z) / r2;
}

/// Rates of a curve of constant generalized curvature kappa_f (left-normal
/// convention): x' = cos phi, y' = sin phi, phi' = kappa_f + p (N . r_hat) / r.
inline CurveRate cgc_derivative(const CurveState& state, double kappa_f, DensityExponent p) {
  const double r2 = state.x * state.x + state.y * state.y;
  if (r2 == 0.0) throw SingularityError("curve state at the origin");
  const double c = std::cos(state.phi);
  const double s = std::sin(state.phi);
  const double normal_radial = -s * state.x + c * state.y;
  return {c, s, kappa_f + p.value() * normal_radial / r2};
}

/// Integration stops where `event` changes sign, or at `max_arclength`.
struct StopCondition {
  std::function<double(const CurveState&)> event;
  double max_arclength = 50.0;

  /// Stop on the first return to the y-axis.
  static StopCondition axis_crossing(double max_arclength = 50.0) {
    return {[](const CurveState& st) { return st.x; }, max_arclength};
  }
  static StopCondition arclength(double length) { return {{}, length}; }
};

struct IntegratorOptions {
  double step_tol = 1e-10;
  double origin_guard = 1e-8;
  int max_steps = 1'000'000;
  /// Uniform arclength intervals in the returned polyline (multiple of 8).
  std::size_t sample_intervals = 4096;
};

struct IntegratedArc {
  BoundaryCurve curve;
  CurveState end;
  bool event_found = false;
  int steps = 0;
};

namespace detail {

using OdeVector = std::array<double, 3>;

// Dormand-Prince 5(4) tableau.
struct DormandPrince {
  static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                          a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                          a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                          b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                          e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
};

class CgcStepper {
 public:
  CgcStepper(double kappa_f, DensityExponent p) : kappa_(kappa_f), p_(p) {}

  struct Trial {
    CurveState state;
    double error;
  };

  Trial step(const CurveState& st, double h) const {
    using T = DormandPrince;
    const OdeVector y{st.x, st.y, st.phi};
    const OdeVector k1 = rate(y);
    const OdeVector k2 = rate(combine(y, h, {T::a21}, {&k1}));
    const OdeVector k3 = rate(combine(y, h, {T::a31, T::a32}, {&k1, &k2}));
    const OdeVector k4 = rate(combine(y, h, {T::a41, T::a42, T::a43}, {&k1, &k2, &k3}));
    const OdeVector k5 = rate(combine(y, h, {T::a51, T::a52, T::a53, T::a54}, {&k1, &k2, &k3, &k4}));
    const OdeVector k6 =
        rate(combine(y, h, {T::a61, T::a62, T::a63, T::a64, T::a65}, {&k1, &k2, &k3, &k4, &k5}));
    const OdeVector out =
        combine(y, h, {T::b1, 0.0, T::b3, T::b4, T::b5, T::b6}, {&k1, &k2, &k3, &k4, &k5, &k6});
    const OdeVector k7 = rate(out);
    double err = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const double e = h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] + T::e5 * k5[i] +
                            T::e6 * k6[i] + T::e7 * k7[i]);
      err = std::max(err, std::abs(e));
    }
    // Inside the unit disk errors count relative to the distance from the
    // origin, where the density term makes the flow sensitive.
    err /= std::min(1.0, std::hypot(st.x, st.y));
    return {{out[0], out[1], out[2], st.s + h}, err};
  }

 private:
  OdeVector rate(const OdeVector& y) const {
    const auto r = cgc_derivative({y[0], y[1], y[2], 0.0}, kappa_, p_);
    return {r.dx, r.dy, r.dphi};
  }

  static OdeVector combine(const OdeVector& y, double h, std::initializer_list<double> coeffs,
                           std::initializer_list<const OdeVector*> ks) {
    OdeVector out = y;
    auto c = coeffs.begin();
    for (const OdeVector* k : ks) {
      for (std::size_t i = 0; i < 3; ++i) out[i] += h * (*c) * (*k)[i];
      ++c;
    }
    return out;
  }

  double kappa_;
  DensityExponent p_;
};

inline double next_step(double h, double err, double tol) {
  if (err == 0.0) return 5.0 * h;
  return h * std::clamp(0.9 * std::pow(tol / err, 0.2), 0.2, 5.0);
}

struct AdvanceResult {
  CurveState end;
  bool event_found = false;
  int steps = 0;
};

inline void check_guard(const CurveState& st, const IntegratorOptions& opts) {
  if (std::hypot(st.x, st.y) < opts.origin_guard) {
    throw SingularityError("trajectory entered the origin guard radius");
  }
}

// Adaptive integration from `start` until the stop condition fires.
inline AdvanceResult advance(const CurveState& start, double kappa_f, DensityExponent p,
                             const StopCondition& stop, const IntegratorOptions& opts) {
  if (!(opts.step_tol > 0.0)) throw ValidationError("step tolerance must be positive");
  if (!(stop.max_arclength > start.s)) throw ValidationError("arclength cap must exceed the start");
  check_guard(start, opts);
  const CgcStepper stepper(kappa_f, p);
  CurveState y = start;
  double h = std::min(1e-2, stop.max_arclength - start.s);
  int last_sign = 0;
  if (stop.event) {
    const double e0 = stop.event(y);
    last_sign = (e0 > 0.0) - (e0 < 0.0);
  }
  int steps = 0;
  while (true) {
    if (++steps > opts.max_steps) {
      throw NonTerminationError("step cap exceeded after arclength " + std::to_string(y.s));
    }
    const double remaining = stop.max_arclength - y.s;
    const bool final_step = h >= remaining;
    if (final_step) h = remaining;
    const auto trial = stepper.step(y, h);
    if (!(trial.error <= opts.step_tol)) {
      h = next_step(h, std::isfinite(trial.error) ? trial.error : 1e300, opts.step_tol);
      if (h < 1e-14) throw SingularityError("step size underflow near arclength " + std::to_string(y.s));
      continue;
    }
    check_guard(trial.state, opts);
    if (stop.event) {
      const double e = stop.event(trial.state);
      const int sign = (e > 0.0) - (e < 0.0);
      if (last_sign != 0 && sign != last_sign) {
        // Bisect on partial steps from y to locate the crossing.
        double lo = 0.0;
        double hi = h;
        CurveState at_hi = trial.state;
        while (hi - lo > 0.25 * opts.step_tol) {
          const double mid = 0.5 * (lo + hi);
          const CurveState m = stepper.step(y, mid).state;
          const double em = stop.event(m);
          if (((em > 0.0) - (em < 0.0)) == last_sign) {
            lo = mid;
          } else {
            hi = mid;
            at_hi = m;
          }
        }
        return {at_hi, true, steps};
      }
      if (sign != 0) last_sign = sign;
    }
    y = trial.state;
    if (final_step) return {y, false, steps};
    h = next_step(h, trial.error, opts.step_tol);
  }
}

// Integrate to exactly `length` beyond start, recording uniform samples.
inline Polyline sample_uniform(const CurveState& start, double kappa_f, DensityExponent p, double length,
                               const IntegratorOptions& opts, CurveState& end_state) {
  const std::size_t n = opts.sample_intervals;
  if (n < 8 || n % 8 != 0) throw ValidationError("sample interval count must be a multiple of 8");
  const CgcStepper stepper(kappa_f, p);
  Polyline out;
  out.param.reserve(n + 1);
  out.points.reserve(n + 1);
  out.velocity.reserve(n + 1);
  auto record = [&](const CurveState& st) {
    out.param.push_back(st.s);
    out.points.push_back(st.position());
    out.velocity.push_back(st.tangent());
  };
  CurveState y = start;
  record(y);
  const double ds = length / static_cast<double>(n);
  double h = ds;
  int steps = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double target = start.s + ds * static_cast<double>(i);
    while (y.s < target) {
      if (++steps > opts.max_steps) throw NonTerminationError("step cap exceeded while sampling");
      const double remaining = target - y.s;
      const bool lands = h >= remaining;
      const double step = lands ? remaining : h;
      const auto trial = stepper.step(y, step);
      if (!(trial.error <= opts.step_tol)) {
        h = next_step(step, std::isfinite(trial.error) ? trial.error : 1e300, opts.step_tol);
        if (h < 1e-14) throw SingularityError("step size underflow while sampling");
        continue;
      }
      check_guard(trial.state, opts);
      y = trial.state;
      if (lands) y.s = target;
      const double proposal = next_step(step, trial.error, opts.step_tol);
      h = lands ? std::max(h, proposal) : proposal;
    }
    record(y);
  }
  end_state = y;
  return out;
}

}  // namespace detail

/// Integrate a curve of constant generalized curvature from `start` until the
/// stop condition fires. The result is sampled uniformly in arclength with
/// every sample an exact integrator step point.
inline IntegratedArc integrate_cgc(const CurveState& start, double kappa_f, DensityExponent p,
                                   const StopCondition& stop, const IntegratorOptions& opts = {}) {
  if (!std::isfinite(kappa_f)) throw ValidationError("generalized curvature must be finite");
  const auto located = detail::advance(start, kappa_f, p, stop, opts);
  const double length = located.end.s - start.s;
  CurveState end;
  Polyline poly = detail::sample_uniform(start, kappa_f, p, length, opts, end);
  IntegratedArc arc{BoundaryCurve(Segment{std::move(poly)}), end, located.event_found, located.steps};
  return arc;
}

// ---------------------------------------------------------------------------
// Symmetric double bubble: right arc from the top vertex (0, 1) back to the
// y-axis, meeting it at 120 degrees at both ends.

/// Tangent angle at launch: 120 degrees from the downward interface.
inline constexpr double kSymmetricLaunchAngle = kPi / 6.0;
/// Unwrapped tangent angle required on landing after the clockwise sweep.
inline constexpr double kSymmetricLandingAngle = kSymmetricLaunchAngle - 4.0 * kPi / 3.0;

struct ShootingOptions {
  double shoot_tol = 1e-10;
  double scan_lo = -20.0;
  double scan_hi = 0.0;
  int scan_steps = 200;
  double max_arclength = 50.0;
  IntegratorOptions integrator;
};

struct ShootingRoot {
  double kappa_f = 0.0;
  double normalized_perimeter = 0.0;
};

struct ShootingResult {
  double kappa_f = 0.0;
  BoundaryCurve arc;
  double landing_residual = 0.0;
  double bottom_vertex_y = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  /// Every converged root of the scan, including the chosen one.
  std::vector<ShootingRoot> roots;
  /// p = 0: every negative kappa_f lands at 120 degrees (scale invariance).
  bool degenerate = false;
};

inline CurveState symmetric_launch_state() { return {0.0, 1.0, kSymmetricLaunchAngle, 0.0}; }

/// Landing-angle residual for a trial kappa_f, or nullopt if the arc never
/// returns to the axis (escapes, hits the origin guard, or runs out of steps).
inline std::optional<double> landing_residual(double kappa_f, DensityExponent p,
                                              const ShootingOptions& opts = {}) {
  try {
    const auto r = detail::advance(symmetric_launch_state(), kappa_f, p,
                                   StopCondition::axis_crossing(opts.max_arclength), opts.integrator);
    if (!r.event_found) return std::nullopt;
    return r.end.phi - kSymmetricLandingAngle;
  } catch (const NumericalError&) {
    return std::nullopt;
  }
}

/// Tangent-angle error where the arc first meets the x-axis, relative to the
/// straight-down direction. A zero means the arc is mirror symmetric in the
/// x-axis, and then its reflection lands on the y-axis at exactly 120 degrees.
inline std::optional<double> midline_residual(double kappa_f, DensityExponent p,
                                              const ShootingOptions& opts = {}) {
  try {
    const StopCondition stop{[](const CurveState& st) { return st.y; }, opts.max_arclength};
    const auto r = detail::advance(symmetric_launch_state(), kappa_f, p, stop, opts.integrator);
    if (!r.event_found || r.end.x <= 0.0) return std::nullopt;
    return r.end.phi + kPi / 2.0;
  } catch (const NumericalError&) {
    return std::nullopt;
  }
}

namespace detail {

// Right region of the symmetric bubble, counterclockwise: down the axis, then
// back up along the reversed arc.
inline BoundaryCurve symmetric_right_loop(const BoundaryCurve& arc) {
  std::vector<Segment> segs;
  segs.emplace_back(LineSegment{arc.start(), arc.end()});
  const auto back = arc.reversed();
  for (const auto& s : back.segments()) segs.push_back(s);
  return BoundaryCurve(std::move(segs), true);
}

// Snap the end samples onto the axis; the event leaves x within step_tol.
inline BoundaryCurve snap_to_axis(const BoundaryCurve& arc) {
  Polyline poly = std::get<Polyline>(arc.segments().front());
  poly.points.back().x = 0.0;
  poly.points.front().x = 0.0;
  return BoundaryCurve(Segment{std::move(poly)});
}

// Full arc from the upper half and its reflection in the x-axis, traversed
// onward so the tangent stays continuous up to the midline defect.
inline BoundaryCurve mirror_assemble(const Polyline& upper) {
  Polyline out = upper;
  out.points.back().y = 0.0;
  out.points.front().x = 0.0;
  const double total = 2.0 * upper.param.back() - upper.param.front();
  for (std::size_t k = upper.size() - 1; k-- > 0;) {
    out.param.push_back(total - (upper.param[k] - upper.param.front()));
    out.points.push_back({out.points[k].x, -out.points[k].y});
    out.velocity.push_back({-upper.velocity[k].x, upper.velocity[k].y});
  }
  return BoundaryCurve(Segment{std::move(out)});
}

inline double symmetric_normalized_perimeter(const BoundaryCurve& arc, DensityExponent p) {
  const double tol = kDefaultQuadratureTolerance;
  // Rescale to unit right-region area first so the absolute tolerance is
  // meaningful when r^p spans many orders of magnitude.
  const double rough = weighted_area_estimate(symmetric_right_loop(arc), p, tol).value;
  if (!(rough > 0.0)) throw ConstructionError("symmetric arc encloses no area");
  const auto unit = arc.scaled(std::pow(1.0 / rough, 1.0 / (p.value() + 2.0)));
  const double arc_length = weighted_length(unit, p, tol);
  const double interface = weighted_length(BoundaryCurve(Segment{LineSegment{unit.end(), unit.start()}}), p, tol);
  const double area = weighted_area(symmetric_right_loop(unit), p, tol);
  const double lambda = std::pow(1.0 / area, 1.0 / (p.value() + 2.0));
  return std::pow(lambda, p.value() + 1.0) * (2.0 * arc_length + interface);
}

// Bisection/secant hybrid on a sign-changing bracket. Returns nullopt when
// the bracket straddles a jump rather than a root.
template <class F>
std::optional<double> refine_root(F&& f, double a, double fa, double b, double fb, double tol) {
  if (std::abs(fa) <= tol) return a;
  if (std::abs(fb) <= tol) return b;
  for (int it = 0; it < 200; ++it) {
    double x = b - fb * (b - a) / (fb - fa);
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const double width = hi - lo;
    // Fall back to bisection when the secant leaves the inner part of the bracket.
    if (!(x > lo + 0.05 * width && x < hi - 0.05 * width)) x = 0.5 * (a + b);
    const auto fx = f(x);
    if (!fx) return std::nullopt;
    if (std::abs(*fx) <= tol) return x;
    if ((*fx > 0.0) == (fa > 0.0)) {
      a = x;
      fa = *fx;
    } else {
      b = x;
      fb = *fx;
    }
    if (std::abs(b - a) < 1e-15 * std::max(1.0, std::abs(a))) break;
  }
  return std::nullopt;
}

struct SymmetricArc {
  BoundaryCurve arc;
  double residual = 0.0;
  bool mirrored = false;
};

inline SymmetricArc symmetric_arc_for(double kappa, bool mirrored, DensityExponent p,
                                      const ShootingOptions& opts) {
  if (mirrored) {
    IntegratorOptions half = opts.integrator;
    half.sample_intervals = (opts.integrator.sample_intervals / 2 + 7) / 8 * 8;
    const StopCondition stop{[](const CurveState& st) { return st.y; }, opts.max_arclength};
    auto upper = integrate_cgc(symmetric_launch_state(), kappa, p, stop, half);
    if (!upper.event_found) throw ConstructionError("symmetric arc did not reach the x-axis");
    const double defect = 2.0 * (upper.end.phi + kPi / 2.0);
    return {mirror_assemble(std::get<Polyline>(upper.curve.segments().front())), defect, true};
  }
  auto arc = integrate_cgc(symmetric_launch_state(), kappa, p,
                           StopCondition::axis_crossing(opts.max_arclength), opts.integrator);
  if (!arc.event_found) throw ConstructionError("symmetric arc did not return to the axis");
  return {snap_to_axis(arc.curve), arc.end.phi - kSymmetricLandingAngle, false};
}

}  // namespace detail

/// Solve for the generalized curvature of the symmetric candidate's right arc.
/// Scans kappa_f over [scan_lo, scan_hi] on the landing residual. Each sign
/// change is refined on the midline residual when it brackets a mirror
/// symmetric arc (far better conditioned: the return leg amplifies
/// integration error by orders of magnitude at large p), otherwise on the
/// landing residual itself. With several roots the least area-normalized
/// perimeter wins.
inline ShootingResult shoot_symmetric_arc(DensityExponent p, const ShootingOptions& opts = {}) {
  if (p.value() < 0.0) throw ValidationError("symmetric candidate needs p >= 0");
  if (!(opts.shoot_tol > 0.0) || opts.scan_steps < 1 || !(opts.scan_lo < opts.scan_hi)) {
    throw ValidationError("invalid shooting options");
  }

  ShootingResult result;
  if (p.value() == 0.0) {
    // Any kappa_f < 0 closes with zero residual; choose the arc whose bottom
    // vertex mirrors the top one, a circle of radius 2/sqrt(3).
    const double kappa = -std::sqrt(3.0) / 2.0;
    const auto built = detail::symmetric_arc_for(kappa, true, p, opts);
    result.kappa_f = kappa;
    result.arc = built.arc;
    result.landing_residual = built.residual;
    result.bottom_vertex_y = result.arc.end().y;
    result.bracket_lo = result.bracket_hi = kappa;
    result.roots.push_back({kappa, detail::symmetric_normalized_perimeter(result.arc, p)});
    result.degenerate = true;
    return result;
  }

  const auto landing = [&](double k) { return landing_residual(k, p, opts); };
  const auto midline = [&](double k) { return midline_residual(k, p, opts); };
  std::vector<double> ks;
  std::vector<std::optional<double>> rs;
  for (int i = 0; i <= opts.scan_steps; ++i) {
    const double k = opts.scan_lo + (opts.scan_hi - opts.scan_lo) * i / opts.scan_steps;
    ks.push_back(k);
    rs.push_back(landing(k));
  }

  struct Found {
    double kappa;
    double lo;
    double hi;
    bool mirrored;
  };
  std::vector<Found> found;
  for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
    if (!rs[i] || !rs[i + 1]) continue;
    const double fa = *rs[i];
    const double fb = *rs[i + 1];
    if (fa == 0.0 && i > 0) continue;  // counted as the right end of the previous pair
    if (fa * fb > 0.0) continue;
    const auto ma = midline(ks[i]);
    const auto mb = midline(ks[i + 1]);
    if (ma && mb && *ma * *mb <= 0.0) {
      if (auto root = detail::refine_root(midline, ks[i], *ma, ks[i + 1], *mb, opts.shoot_tol / 2.0)) {
        found.push_back({*root, ks[i], ks[i + 1], true});
        continue;
      }
    }
    if (auto root = detail::refine_root(landing, ks[i], fa, ks[i + 1], fb, opts.shoot_tol)) {
      found.push_back({*root, ks[i], ks[i + 1], false});
    }
  }
  if (found.empty()) {
    throw BracketError("no landing-angle sign change for p = " + std::to_string(p.value()));
  }

  std::size_t best = 0;
  std::vector<detail::SymmetricArc> arcs;
  for (std::size_t i = 0; i < found.size(); ++i) {
    arcs.push_back(detail::symmetric_arc_for(found[i].kappa, found[i].mirrored, p, opts));
    result.roots.push_back({found[i].kappa, detail::symmetric_normalized_perimeter(arcs.back().arc, p)});
    if (result.roots[i].normalized_perimeter < result.roots[best].normalized_perimeter) best = i;
  }
  result.kappa_f = found[best].kappa;
  result.arc = arcs[best].arc;
  result.landing_residual = arcs[best].residual;
  result.bottom_vertex_y = result.arc.end().y;
  result.bracket_lo = found[best].lo;
  result.bracket_hi = found[best].hi;
  return result;
}

}  // namespace dbubble
