#include <gtest/gtest.h>

#include <cmath>

#include "dbubble.hpp"

using namespace dbubble;

TEST(CircleCurvature, ThroughOrigin) {
  // Inward normal at z points to the centre; N . z / |z|^2 = -1/(2R).
  const Point c{0.6, -0.8};
  for (double p : {0.0, 1.0, 2.0, 6.0}) {
    for (double t : {0.1, 1.5, 4.0}) {
      EXPECT_NEAR(circle_generalized_curvature(c, 1.0, c + from_polar(1.0, t), DensityExponent(p)), 1 + p / 2, 1e-12);
    }
  }
}

TEST(CircleCurvature, CentredAtOrigin) {
  for (double t : {0.0, 2.0, 5.0}) {
    EXPECT_NEAR(circle_generalized_curvature({0, 0}, 2.0, from_polar(2.0, t), DensityExponent(3.0)), 4.0 / 2.0, 1e-12);
  }
}

TEST(CircleCurvature, GenericCircleVaries) {
  const DensityExponent p(2.0);
  // Nearest and farthest points of the circle centred at (3, 0).
  const double near = circle_generalized_curvature({3, 0}, 1.0, {2, 0}, p);
  const double far = circle_generalized_curvature({3, 0}, 1.0, {4, 0}, p);
  EXPECT_NEAR(near, 1 - 2.0 / 2.0, 1e-12);
  EXPECT_NEAR(far, 1 + 2.0 / 4.0, 1e-12);
}

TEST(CircleCurvature, Errors) {
  EXPECT_THROW(circle_generalized_curvature({0, 1}, 1.0, {0, 0}, DensityExponent(1.0)), SingularityError);
  EXPECT_THROW(circle_generalized_curvature({0, 1}, 1.0, {0, 3}, DensityExponent(1.0)), ValidationError);
}

TEST(CircleCurvature, VariationThresholds) {
  const auto v = verify::circle_variation(2.0);
  EXPECT_LE(v.through, 1e-10);
  EXPECT_LE(v.centered, 1e-10);
  EXPECT_GE(v.control, 1e-3);
}

TEST(Cocycle, SymbolicResidual) {
  for (double p : {0.0, 0.5, 3.0, 10.0}) {
    EXPECT_LE(std::abs(standard_cocycle_symbolic(DensityExponent(p), 1.7, 0.9)), 1e-12);
  }
}

TEST(CheckEquilibrium, StandardCandidate) {
  for (double p : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const auto c = build_standard(DensityExponent(p), 1.0, 0.7);
    const auto rep = check_equilibrium(c, 1e-6, 1e-8);
    EXPECT_TRUE(rep.equilibrium) << "p=" << p << ": " << rep.reason;
    EXPECT_LE(rep.cocycle_residual, 1e-9);
    for (const auto& v : rep.vertex_angles) {
      double sum = 0.0;
      for (double a : v.angles) sum += a;
      EXPECT_NEAR(sum, 2 * kPi, 1e-9);
      if (!v.at_origin) {
        for (double a : v.angles) EXPECT_NEAR(a, 2 * kPi / 3, 1e-6);
      }
    }
  }
}

TEST(CheckEquilibrium, StandardArcsFollowCircleFormula) {
  // Outer arcs are circles through the origin: kappa_f = (1 + p/2)/r.
  const double p = 2.0;
  const auto c = build_standard(DensityExponent(p), 1.0, 1.0);
  const auto rep = check_equilibrium(c, 1e-6, 1e-8);
  const double r1 = c.parameter("r1");
  bool found = false;
  for (const auto& s : rep.curvature_by_segment) {
    if (std::abs(std::abs(s.mean) - (1 + p / 2) / r1) < 1e-8) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(CheckEquilibrium, RoundCandidates) {
  for (auto kind : {CandidateKind::concentric, CandidateKind::two_circles}) {
    const auto rep = check_equilibrium(build_candidate(kind, DensityExponent(2.0), 1.0, 1.0), 1e-6, 1e-8);
    EXPECT_TRUE(rep.equilibrium) << rep.reason;
  }
}

TEST(CheckEquilibrium, SymmetricAtSquareDensity) {
  const auto c = build_symmetric(DensityExponent(2.0), 1.0);
  const auto rep = check_equilibrium(c, 1e-6, 1e-6);
  EXPECT_TRUE(rep.equilibrium) << rep.reason;
  // The axis segment is radial, so its generalized curvature is 0.
  const auto& axis = rep.curvature_by_segment.at(c.interface.front());
  EXPECT_NEAR(axis.mean, 0.0, 1e-12);
  EXPECT_NEAR(std::abs(rep.curvature_by_segment[0].mean), std::abs(rep.curvature_by_segment[1].mean), 1e-8);
}

TEST(CheckEquilibrium, DetectsViolation) {
  // Bend the straight interface into a shallow arc through the same two
  // vertices: the meeting angles move off 120 degrees.
  auto c = build_standard(DensityExponent(1.0), 1.0, 1.0);
  auto& iface = c.edges[c.interface.front()];
  const auto line = std::get<LineSegment>(iface.curve.segments().front());
  const double half = line.length() / 2;
  const double R = 20 * line.length();
  const Point center = (line.a + line.b) / 2 + std::sqrt(R * R - half * half) * left_normal(line.direction());
  iface.curve = BoundaryCurve(Segment{CircularArc{center, R, arg(line.a - center), arg(line.b - center), true}});
  const auto rep = check_equilibrium(c, 1e-6, 1e-8);
  EXPECT_FALSE(rep.equilibrium);
  EXPECT_FALSE(rep.reason.empty());
  EXPECT_THROW(check_equilibrium(c, 0.0, 1e-8), ValidationError);
}

TEST(Pinch, SavesPerimeterForSmallRadius) {
  const auto r = pinch_delta(DensityExponent(2.0), 1.0, 1.0, 0.05);
  EXPECT_LT(r.delta, 0.0);
  EXPECT_NEAR(r.delta, r.added_perimeter - r.saved_perimeter, 1e-15);
  EXPECT_GT(r.area_imbalance, 0.0);
}

TEST(Pinch, SavedArcClosedForm) {
  // The saved arc of C1 from the origin: |z| = 2 R sin(t/2) at angle t, so
  // int_0^T (2R sin(t/2))^p R dt. At p = 0 this is R T.
  const double r = 0.1;
  const auto res = pinch_delta(DensityExponent(0.0), 1.0, 1.0, r);
  EXPECT_NEAR(res.saved_perimeter, 2 * std::asin(r / 2), 1e-13);
  EXPECT_NEAR(res.added_perimeter, r * 2 * std::asin(r / 2), 1e-13);
}

TEST(Pinch, Orders) {
  const auto o = verify::pinch_orders(2.0);
  EXPECT_NEAR(o.saved_slope, 3.0, 0.1);
  EXPECT_NEAR(o.added_slope, 4.0, 0.1);
  EXPECT_LT(o.worst_delta, 0.0);
}

TEST(Pinch, Threshold) {
  const double star = pinch_threshold(DensityExponent(2.0), 1.0, 1.0);
  EXPECT_GT(star, 0.0);
  EXPECT_LT(pinch_delta(DensityExponent(2.0), 1.0, 1.0, 0.99 * star).delta, 0.0);
  EXPECT_GE(pinch_delta(DensityExponent(2.0), 1.0, 1.0, std::min(0.999, 1.01 * star)).delta, 0.0);
}

TEST(Pinch, RejectsBadRadius) {
  EXPECT_THROW(pinch_delta(DensityExponent(2.0), 1.0, 1.0, 1.5), ValidationError);
  EXPECT_THROW(pinch_delta(DensityExponent(2.0), 1.0, 1.0, 0.0), ValidationError);
}
