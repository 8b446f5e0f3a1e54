#include <gtest/gtest.h>

#include <cmath>

#include "dbubble.hpp"

using namespace dbubble;

TEST(CgcDerivative, RadialLineHasNoTurning) {
  // Heading straight out along r: N is perpendicular to r.
  for (double p : {0.0, 2.0, 7.5}) {
    const auto rate = cgc_derivative({1.0, 1.0, kPi / 4, 0.0}, 0.0, DensityExponent(p));
    EXPECT_NEAR(rate.dphi, 0.0, 1e-15);
    EXPECT_NEAR(rate.dx, std::cos(kPi / 4), 1e-15);
  }
}

TEST(CgcDerivative, CircleThroughOrigin) {
  // On the circle of radius R centred at (0, R), traversed with the centre on
  // the left, N . z / |z|^2 = -1/(2R), so kappa_f = (1 + p/2)/R.
  const double R = 1.5;
  const double p = 3.0;
  for (double t : {-1.0, 0.3, 2.0}) {
    const Point z = Point{0, R} + from_polar(R, t);
    const auto rate = cgc_derivative({z.x, z.y, t + kPi / 2, 0.0}, (1 + p / 2) / R, DensityExponent(p));
    EXPECT_NEAR(rate.dphi, 1.0 / R, 1e-14);
  }
}

TEST(CgcDerivative, CircleCentredAtOrigin) {
  const double R = 0.7;
  const double p = 2.0;
  const Point z = from_polar(R, 1.1);
  const auto rate = cgc_derivative({z.x, z.y, 1.1 + kPi / 2, 0.0}, (1 + p) / R, DensityExponent(p));
  EXPECT_NEAR(rate.dphi, 1.0 / R, 1e-14);
}

TEST(CgcDerivative, OriginIsSingular) {
  EXPECT_THROW(cgc_derivative({0, 0, 0, 0}, 1.0, DensityExponent(1.0)), SingularityError);
}

TEST(IntegrateCgc, EuclideanCircleAndLine) {
  const auto circle = integrate_cgc({2.0, 1.0, 0.0, 0.0}, 1.0, DensityExponent(0.0), StopCondition::arclength(2 * kPi));
  for (const auto& q : circle.curve.sample_points(256)) EXPECT_NEAR(distance(q, {2.0, 2.0}), 1.0, 1e-9);
  EXPECT_NEAR(distance(circle.end.position(), {2.0, 1.0}), 0.0, 1e-9);

  const auto line = integrate_cgc({1.0, 0.0, 0.5, 0.0}, 0.0, DensityExponent(0.0), StopCondition::arclength(2.0));
  EXPECT_NEAR(distance(line.end.position(), Point{1.0, 0.0} + from_polar(2.0, 0.5)), 0.0, 1e-12);
}

TEST(IntegrateCgc, CircleThroughOriginAwayFromOrigin) {
  // Circle of radius 1 centred at (0, 1) at p = 2 has kappa_f = 2. Both
  // halves from the top stay on it until 0.05 from the origin.
  const auto r = verify::circle_oracle(0.05);
  EXPECT_LE(r.deviation, 1e-8);
  EXPECT_NEAR(r.closest_radius, 0.05, 1e-6);
}

TEST(IntegrateCgc, DeviationGrowsNearOrigin) {
  // The flow is ill-conditioned at the origin: the achieved deviation grows
  // roughly like tol / r^2. Recorded here so a regression either way shows.
  const double far = verify::circle_oracle(0.05).deviation;
  const double near = verify::circle_oracle(1e-3).deviation;
  EXPECT_GT(near, 100.0 * far);
}

TEST(IntegrateCgc, ArcSamplesAreUniformAndExact) {
  IntegratorOptions opts;
  opts.sample_intervals = 64;
  const auto arc = integrate_cgc({1, 0, kPi / 2, 0}, 1.0, DensityExponent(0.0), StopCondition::arclength(1.0), opts);
  const auto& poly = std::get<Polyline>(arc.curve.segments().front());
  ASSERT_EQ(poly.size(), 65u);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    EXPECT_NEAR(poly.param[i], i / 64.0, 1e-14);
    EXPECT_NEAR(norm(poly.points[i]), 1.0, 1e-10);
  }
}

TEST(IntegrateCgc, AxisEventIsLocated) {
  // Unit circle at p = 0 from (1, 0) heading up crosses x = 0 at (0, 1).
  const auto arc = integrate_cgc({1, 0, kPi / 2, 0}, 1.0, DensityExponent(0.0), StopCondition::axis_crossing());
  EXPECT_TRUE(arc.event_found);
  EXPECT_NEAR(arc.end.x, 0.0, 1e-10);
  EXPECT_NEAR(arc.end.s, kPi / 2, 1e-9);
}

TEST(IntegrateCgc, Failures) {
  IntegratorOptions opts;
  opts.max_steps = 5;
  EXPECT_THROW(integrate_cgc({1, 0, kPi / 2, 0}, 1.0, DensityExponent(0.0), StopCondition::arclength(100.0), opts),
               NonTerminationError);
  // Straight at the origin.
  EXPECT_THROW(integrate_cgc({1, 0, kPi, 0}, 0.0, DensityExponent(1.0), StopCondition::arclength(2.0)),
               SingularityError);
  EXPECT_THROW(integrate_cgc({0, 0, 0, 0}, 0.0, DensityExponent(1.0), StopCondition::arclength(1.0)), SingularityError);
}

TEST(Shooting, EuclideanArcIsTwoHundredFortyDegrees) {
  // Every kappa_f lands at 120 degrees when p = 0; the arc of the unit-height
  // bubble is a 240 degree arc of radius 2/sqrt(3).
  const auto shot = shoot_symmetric_arc(DensityExponent(0.0));
  EXPECT_TRUE(shot.degenerate);
  const auto& poly = std::get<Polyline>(shot.arc.segments().front());
  EXPECT_NEAR(poly.param.back() - poly.param.front(), (4 * kPi / 3) * 2 / std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(shot.bottom_vertex_y, -1.0, 1e-9);
}

TEST(Shooting, LandsAtOneHundredTwentyDegrees) {
  for (double p : {1.0, 2.0, 5.0}) {
    const auto shot = shoot_symmetric_arc(DensityExponent(p));
    EXPECT_LE(std::abs(shot.landing_residual), 1e-10) << "p=" << p;
    EXPECT_EQ(shot.arc.start().x, 0.0);
    EXPECT_EQ(shot.arc.start().y, 1.0);
    EXPECT_NEAR(shot.arc.end().x, 0.0, 1e-12);
    EXPECT_LT(shot.bottom_vertex_y, 1.0);
    EXPECT_FALSE(shot.roots.empty());
    const Point t = end_tangent(shot.arc.segments().back());
    EXPECT_NEAR(std::atan2(t.y, t.x), 5 * kPi / 6, 1e-6);
  }
}

TEST(Shooting, ArcHasConstantGeneralizedCurvature) {
  const DensityExponent p(2.0);
  const auto shot = shoot_symmetric_arc(p);
  for (double k : sample_generalized_curvature(shot.arc, p)) EXPECT_NEAR(k, shot.kappa_f, 1e-8);
}

TEST(Shooting, RejectsNegativeExponent) {
  EXPECT_THROW(shoot_symmetric_arc(DensityExponent(-1.0)), ValidationError);
}

TEST(Shooting, EmptyBracketFails) {
  ShootingOptions opts;
  opts.scan_lo = 5.0;
  opts.scan_hi = 6.0;
  EXPECT_THROW(shoot_symmetric_arc(DensityExponent(2.0), opts), BracketError);
}
