#include <gtest/gtest.h>

#include <cmath>

#include "dbubble.hpp"

using namespace dbubble;

TEST(AreaCone, PointMap) {
  const auto w = map_to_area_cone({1, 0}, DensityExponent(1.0));
  EXPECT_NEAR(w.radius, 0.5, 1e-15);
  EXPECT_NEAR(w.angle, 0.0, 1e-15);
  const auto v = map_to_area_cone(from_polar(2.0, 0.7), DensityExponent(2.0));
  EXPECT_NEAR(v.radius, 8.0 / 3.0, 1e-14);
  EXPECT_NEAR(v.angle, 2.1, 1e-14);
  const Point back = map_from_area_cone(v, DensityExponent(2.0));
  EXPECT_NEAR(distance(back, from_polar(2.0, 0.7)), 0.0, 1e-14);
}

TEST(AreaCone, InverseErrors) {
  EXPECT_THROW(map_from_area_cone({1.0, 7.0}, DensityExponent(1.0)), DomainError);
}

TEST(AreaCone, QuarterCircleBecomesHalfCircle) {
  // Quarter unit circle at p = 1 has weighted length pi/2; its image is a
  // half circle of radius 1/2.
  const BoundaryCurve q(Segment{CircularArc{{0, 0}, 1.0, 0.0, kPi / 2, true}});
  const DensityExponent p(1.0);
  EXPECT_NEAR(weighted_length(q, p), kPi / 2, 1e-13);
  const auto image = map_curve_to_area_cone(q, p);
  EXPECT_NEAR(weighted_length(image, DensityExponent(0.0)), kPi / 2, 1e-12);
  for (const auto& w : image.sample_points(64)) EXPECT_NEAR(norm(w), 0.5, 1e-14);
}

TEST(PerimeterCone, PointMap) {
  const auto w = map_to_perimeter_cone({1, 0}, DensityExponent(2.0));
  EXPECT_NEAR(w.radius, 0.5, 1e-15);
  const auto v = map_to_perimeter_cone(from_polar(1.0, 0.5), DensityExponent(2.0));
  EXPECT_NEAR(v.angle, 1.0, 1e-15);
}

TEST(PerimeterCone, AnnularSectorArea) {
  // 1 <= r <= 2, 0 <= theta <= pi/2 at p = 2: weighted area 15 pi / 8; image
  // is the half annulus of radii 1/2 and 2.
  const BoundaryCurve sector(std::vector<Segment>{LineSegment{{1, 0}, {2, 0}}, CircularArc{{0, 0}, 2.0, 0.0, kPi / 2, true},
                                                  LineSegment{{0, 2}, {0, 1}}, CircularArc{{0, 0}, 1.0, kPi / 2, 0.0, false}},
                             true);
  const DensityExponent p(2.0);
  EXPECT_NEAR(weighted_area(sector, p), 15 * kPi / 8, 1e-12);
  const auto image = map_curve_to_perimeter_cone(sector, p);
  EXPECT_NEAR(cone_swept_area(image), 15 * kPi / 8, 1e-10);
  for (const auto& w : image.sample_points(16)) EXPECT_LE(arg(w), kPi + 1e-12);
}

TEST(PerimeterCone, LengthFactor) {
  // Radial segment [1, 2] at p = 2: plane length 7/3, image |w| = r^2/2 with
  // |dw| = r dr and density |w|^(1/2) = r / sqrt(2), so image length is
  // (7/3) / sqrt(2).
  const DensityExponent p(2.0);
  EXPECT_NEAR(perimeter_cone_length_factor(p), 1 / std::sqrt(2.0), 1e-15);
  const BoundaryCurve radial(Segment{LineSegment{{1, 0}, {2, 0}}});
  const auto image = map_curve_to_perimeter_cone(radial, p);
  EXPECT_NEAR(weighted_length(image, DensityExponent(0.5)), 7.0 / 3.0 / std::sqrt(2.0), 1e-11);
}

TEST(Geodesic, ToOrigin) {
  for (double p : {0.0, 1.0, 4.0}) {
    const auto g = geodesic(DensityExponent(p), {1, 0}, {0, 0});
    EXPECT_EQ(g.kind, GeodesicKind::segment_to_origin);
    EXPECT_NEAR(g.weighted_length, 1 / (p + 1), 1e-14);
  }
}

TEST(Geodesic, ViaOrigin) {
  const auto g = geodesic(DensityExponent(1.0), {1, 0}, {0, 1});
  EXPECT_EQ(g.kind, GeodesicKind::two_segments_via_origin);
  EXPECT_NEAR(g.weighted_length, 1.0, 1e-14);
  ASSERT_EQ(g.waypoints.size(), 3u);
  EXPECT_EQ(g.waypoints[1], (Point{0, 0}));
}

TEST(Geodesic, ConeChord) {
  const DensityExponent p(1.0);
  const auto g = geodesic(p, {1, 0}, {std::cos(0.1), std::sin(0.1)});
  EXPECT_EQ(g.kind, GeodesicKind::cone_chord);
  EXPECT_NEAR(g.weighted_length, std::sin(0.1), 1e-12);
  EXPECT_NEAR(weighted_length(g.path, p), g.weighted_length, 1e-9);
  EXPECT_NEAR(distance(g.path.end(), {std::cos(0.1), std::sin(0.1)}), 0.0, 1e-12);
}

TEST(Geodesic, Degenerate) {
  const auto g = geodesic(DensityExponent(2.0), {0.3, 0.4}, {0.3, 0.4});
  EXPECT_EQ(g.kind, GeodesicKind::cone_chord);
  EXPECT_EQ(g.weighted_length, 0.0);
}

TEST(Geodesic, EuclideanIsStraight) {
  const auto g = geodesic(DensityExponent(0.0), {1, 0}, {-1, 0.5});
  EXPECT_NEAR(g.weighted_length, std::hypot(2.0, 0.5), 1e-10);
}

TEST(Geodesic, ContinuousAcrossBoundary) {
  EXPECT_LE(verify::geodesic_boundary_jump(1.0), 1e-8);
  EXPECT_LE(verify::geodesic_boundary_jump(3.0), 1e-8);
}

TEST(PhiEps, Identity) {
  const BoundaryCurve c(Segment{CircularArc::full_circle({2, 0}, 0.5)}, true);
  const auto same = apply_phi_eps(c, 0.0);
  EXPECT_EQ(same.start(), c.start());
  EXPECT_EQ(apply_phi_eps(Point{0.3, 0.2}, 0.0), (Point{0.3, 0.2}));
}

TEST(PhiEps, PointMapAndJacobian) {
  const Point z = from_polar(2.0, 0.4);
  EXPECT_NEAR(norm(apply_phi_eps(z, 1.0)), std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(arg(apply_phi_eps(z, 1.0)), 0.4, 1e-15);
  EXPECT_NEAR(phi_eps_jacobian(z, 1.0).det(), 1.0, 1e-14);
}

TEST(PhiEps, AnnulusKeepsArea) {
  EXPECT_NEAR(verify::annulus_area_after_phi(1.0), 5 * kPi, 1e-10);
}

TEST(PhiEps, RadialSegmentLength) {
  // [2, 3] maps to [sqrt 3, sqrt 8]; under r^2 the length drops from 19/3 to
  // (8 sqrt 8 - 3 sqrt 3)/3.
  const BoundaryCurve seg(Segment{LineSegment{{2, 0}, {3, 0}}});
  const DensityExponent p(2.0);
  EXPECT_NEAR(weighted_length(seg, p), 19.0 / 3.0, 1e-12);
  EXPECT_NEAR(weighted_length(apply_phi_eps(seg, 1.0), p), (8 * std::sqrt(8.0) - 3 * std::sqrt(3.0)) / 3, 1e-10);
}

TEST(PhiEps, Errors) {
  const BoundaryCurve c(Segment{CircularArc::full_circle({0, 0}, 0.9)}, true);
  EXPECT_THROW(apply_phi_eps(c, 1.0), DomainError);
  EXPECT_THROW(apply_phi_eps(Point{0.5, 0}, 1.0), DomainError);
  EXPECT_THROW(apply_phi_eps(Point{2, 0}, -1.0), ValidationError);
}
