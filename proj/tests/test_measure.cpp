#include <gtest/gtest.h>

#include <cmath>

#include "dbubble.hpp"

using namespace dbubble;

namespace {

BoundaryCurve circle(Point c, double R, double start = 0.0) {
  return BoundaryCurve(Segment{CircularArc::full_circle(c, R, start)}, true);
}

BoundaryCurve segment(Point a, Point b) { return BoundaryCurve(Segment{LineSegment{a, b}}); }

}  // namespace

TEST(WeightedLength, CircleCentredAtOrigin) {
  // r is constant on the circle: length 2 pi R^(p+1).
  for (double p : {0.0, 1.0, 2.5, 7.0}) {
    const double R = 1.7;
    EXPECT_NEAR(weighted_length(circle({0, 0}, R), DensityExponent(p)), 2 * kPi * std::pow(R, p + 1),
                1e-10 * std::pow(R, p + 1));
  }
}

TEST(WeightedLength, RadialSegment) {
  // int_2^3 r^2 dr = 19/3.
  EXPECT_NEAR(weighted_length(segment({2, 0}, {3, 0}), DensityExponent(2.0)), 19.0 / 3.0, 1e-12);
  // int_0^1 r^p dr = 1/(p+1), including the origin endpoint.
  EXPECT_NEAR(weighted_length(segment({0, 0}, {0, 1}), DensityExponent(3.0)), 0.25, 1e-12);
}

TEST(WeightedLength, FlatDensityIsEuclidean) {
  EXPECT_NEAR(weighted_length(segment({1, 2}, {4, 6}), DensityExponent(0.0)), 5.0, 1e-13);
  EXPECT_NEAR(weighted_length(circle({3, -1}, 2.0), DensityExponent(0.0)), 4 * kPi, 1e-12);
}

TEST(WeightedLength, CircleThroughOriginAtSquareDensity) {
  // |z| = 2R cos(t) on the circle of radius R centred at (R, 0): length
  // 4 pi R^3 and area (3/2) pi R^4 at p = 2.
  const double R = 0.9;
  const auto c = circle({R, 0}, R, kPi);
  EXPECT_NEAR(weighted_length(c, DensityExponent(2.0)), 4 * kPi * std::pow(R, 3), 1e-10);
  EXPECT_NEAR(weighted_area(c, DensityExponent(2.0)), 1.5 * kPi * std::pow(R, 4), 1e-10);
}

TEST(WeightedArea, DiskAndAnnulus) {
  for (double p : {0.0, 1.0, 4.0}) {
    const DensityExponent d(p);
    EXPECT_NEAR(weighted_area(circle({0, 0}, 2.0), d), 2 * kPi * std::pow(2.0, p + 2) / (p + 2), 1e-9);
  }
  EXPECT_NEAR(weighted_area(circle({2, 3}, 1.5), DensityExponent(0.0)), kPi * 2.25, 1e-12);
}

TEST(WeightedArea, ReversedLoopIsNegative) {
  const auto c = circle({0.5, 0.2}, 1.0);
  const DensityExponent p(2.0);
  EXPECT_NEAR(weighted_area(c.reversed(), p), -weighted_area(c, p), 1e-12);
}

TEST(WeightedArea, Square) {
  // Unit square [1,2]x[0,1] at p = 2: integral of x^2 + y^2 = 7/3 + 1/3.
  const BoundaryCurve sq(std::vector<Segment>{LineSegment{{1, 0}, {2, 0}}, LineSegment{{2, 0}, {2, 1}},
                                              LineSegment{{2, 1}, {1, 1}}, LineSegment{{1, 1}, {1, 0}}},
                         true);
  EXPECT_NEAR(weighted_area(sq, DensityExponent(2.0)), 8.0 / 3.0, 1e-12);
}

TEST(Measure, ScalingLaws) {
  const auto c = circle({0.3, 0.4}, 0.8);
  const DensityExponent p(3.0);
  const double len = weighted_length(c, p);
  const double area = weighted_area(c, p);
  for (double lambda : {0.5, 2.0}) {
    const auto s = scale_geometry(c, lambda);
    EXPECT_NEAR(weighted_length(s, p) / len, std::pow(lambda, 4.0), 1e-10);
    EXPECT_NEAR(weighted_area(s, p) / area, std::pow(lambda, 5.0), 1e-10);
  }
}

TEST(Measure, LoopReport) {
  const auto r = measure_loop(circle({0, 0}, 1.0), DensityExponent(1.0));
  EXPECT_NEAR(r.weighted_length, 2 * kPi, 1e-11);
  EXPECT_NEAR(r.weighted_area, 2 * kPi / 3, 1e-11);
  EXPECT_LE(r.quadrature_error_estimate, kDefaultQuadratureTolerance);
}

TEST(Measure, Errors) {
  EXPECT_THROW(weighted_area(segment({1, 0}, {2, 0}), DensityExponent(1.0)), ValidationError);
  EXPECT_THROW(weighted_length(segment({0, 0}, {1, 0}), DensityExponent(-0.5)), IntegrabilityError);
  EXPECT_THROW(weighted_area(circle({1, 0}, 1.0), DensityExponent(-2.0)), ValidationError);
  EXPECT_THROW(weighted_length(circle({1, 0}, 1.0), DensityExponent(1.0), 0.0), ValidationError);
  EXPECT_THROW(DensityExponent(std::nan("")), ValidationError);
  const BoundaryCurve bowtie(std::vector<Segment>{LineSegment{{1, 1}, {3, 2.2}}, LineSegment{{3, 2.2}, {3, 1}},
                                                  LineSegment{{3, 1}, {1, 2}}, LineSegment{{1, 2}, {1, 1}}},
                             true);
  EXPECT_THROW(weighted_area(bowtie, DensityExponent(0.0)), UndefinedResultError);
  EXPECT_THROW(BoundaryCurve(std::vector<Segment>{LineSegment{{0, 0}, {1, 0}}, LineSegment{{2, 0}, {3, 0}}}),
               ValidationError);
}

TEST(Quadrature, SampledRichardsonMatchesPolynomial) {
  // Smooth sampled integrand: int_0^1 e^t dt.
  std::vector<double> t, g;
  for (int i = 0; i <= 64; ++i) {
    t.push_back(i / 64.0);
    g.push_back(std::exp(t.back()));
  }
  const auto r = integrate_samples(t, g);
  EXPECT_NEAR(r.value, std::exp(1.0) - 1.0, 1e-11);
}

TEST(Quadrature, AdaptiveHandlesEndpointPower) {
  const auto r = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12);
  EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-11);
}
