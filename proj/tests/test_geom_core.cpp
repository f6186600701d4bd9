#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cylpack/convex_body.hpp"
#include "cylpack/frame.hpp"
#include "cylpack/mvee.hpp"
#include "cylpack/projection.hpp"
#include "cylpack/slice.hpp"
#include "oracles.hpp"

using namespace cylpack;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double pi = std::numbers::pi;

VectorXd vec(std::initializer_list<double> xs) {
  VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

MatrixXd random_points(rng& gen, int d, int n) {
  MatrixXd p(d, n);
  for (int j = 0; j < n; ++j) p.col(j) = gaussian_vector(gen, d);
  return p;
}

}  // namespace

TEST(Orthonormalize, AlreadyOrthogonal) {
  MatrixXd m(2, 2);
  m << 1, 0, 0, 2;
  const frame f = orthonormalize(m);
  EXPECT_NEAR((f.columns() - MatrixXd::Identity(2, 2)).norm(), 0.0, 1e-15);
}

TEST(Orthonormalize, SingleVectorIsNormalized) {
  const frame f = orthonormalize(MatrixXd(vec({1, 1, 0})));
  EXPECT_NEAR(f.column(0)(0), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(f.column(0)(1), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(f.column(0)(2), 0.0);
}

TEST(Orthonormalize, GramSchmidtByHand) {
  MatrixXd m(2, 2);
  m << 1, 1, 0, 1;  // columns (1,0), (1,1)
  const frame f = orthonormalize(m);
  EXPECT_NEAR((f.column(0) - vec({1, 0})).norm(), 0.0, 1e-15);
  EXPECT_NEAR((f.column(1) - vec({0, 1})).norm(), 0.0, 1e-15);
}

TEST(Orthonormalize, DependentVectorsThrow) {
  MatrixXd m(3, 2);
  m << 1, 2, 1, 2, 0, 1e-12;
  try {
    orthonormalize(m);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::rank_deficient);
  }
}

TEST(Complement, CoordinateAxis) {
  const frame h = complement(orthonormalize(MatrixXd(vec({1, 0, 0}))));
  ASSERT_EQ(h.dim(), 2);
  EXPECT_NEAR(std::abs(h.columns()(0, 0)) + std::abs(h.columns()(0, 1)), 0.0, 1e-15);
  EXPECT_LE(h.gram_deviation(), 1e-12);
}

TEST(Complement, DiagonalLine) {
  const frame h = complement(orthonormalize(MatrixXd(vec({1, 1}))));
  ASSERT_EQ(h.dim(), 1);
  EXPECT_NEAR(std::abs(h.column(0).dot(vec({1, -1}))) / std::sqrt(2.0), 1.0, 1e-14);
}

TEST(Complement, RandomFramesPassGramTest) {
  rng gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const frame e = orthonormalize(random_points(gen, 5, 2));
    const frame h = complement(e);
    ASSERT_EQ(h.dim(), 3);
    EXPECT_LE(e.gram_deviation(), 1e-10);
    EXPECT_LE(h.gram_deviation(), 1e-10);
    EXPECT_LE((e.columns().transpose() * h.columns()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Complement, FullDimensionalThrows) {
  EXPECT_THROW(complement(frame::from_columns(MatrixXd::Identity(3, 3))), error);
}

TEST(Support, ClosedForms) {
  const convex_body b = convex_body::unit_ball(3);
  EXPECT_DOUBLE_EQ(b.support(vec({0, 0.6, 0.8})), 1.0);
  MatrixXd q(2, 2);
  q << 1, 0, 0, 0.25;
  const convex_body e = ellipsoid::from_shape(VectorXd::Zero(2), q);
  EXPECT_NEAR(e.support(vec({0, 1})), 2.0, 1e-14);
  const convex_body sq = convex_body::cube(2);
  EXPECT_NEAR(sq.support(vec({1, 1}) / std::sqrt(2.0)), std::sqrt(2.0), 1e-15);
}

TEST(ProjectBody, BallAndEllipsoid) {
  rng gen(3);
  const convex_body b = convex_body::unit_ball(3);
  const frame e = orthonormalize(random_points(gen, 3, 2));
  const convex_body p = project_body(b, e);
  ASSERT_TRUE(p.is_ball());
  EXPECT_EQ(p.dim(), 2);
  EXPECT_DOUBLE_EQ(p.as_ball().radius, 1.0);

  MatrixXd q(2, 2);
  q << 1, 0, 0, 0.25;
  const convex_body ell = ellipsoid::from_shape(VectorXd::Zero(2), q);
  const convex_body seg = project_body(ell, coordinate_frame(2, {1}));
  EXPECT_NEAR(volume(seg).value, 4.0, 1e-12);
}

TEST(ProjectBody, CubeShadowIsHexagon) {
  const convex_body cube = convex_body::cube(3);
  const frame e = complement(orthonormalize(MatrixXd(vec({1, 1, 1}))));
  const convex_body hex = project_body(cube, e);
  EXPECT_EQ(hex.as_polytope().vertices().cols(), 6);
  // Brute force projection-area identity over the six unit faces.
  double oracle_area = 0.0;
  const VectorXd u = vec({1, 1, 1}).normalized();
  for (int axis = 0; axis < 3; ++axis) oracle_area += 2.0 * std::abs(u(axis));
  oracle_area *= 0.5;
  EXPECT_NEAR(volume(hex).value, oracle_area, 1e-12);
  EXPECT_NEAR(volume(hex).value, std::sqrt(3.0), 1e-12);
}

TEST(ProjectBody, WrongDimensionThrows) {
  EXPECT_THROW(project_body(convex_body::unit_ball(3), coordinate_frame(4, {0})), error);
}

TEST(ProjectBody, SupportIsPreservedInSubspace) {
  rng gen(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 3 + trial % 3;
    const frame e = orthonormalize(random_points(gen, d, 1 + trial % (d - 1)));
    std::vector<convex_body> bodies;
    bodies.push_back(ball{gaussian_vector(gen, d), 1.5});
    MatrixXd t = random_points(gen, d, d) + 2.0 * MatrixXd::Identity(d, d);
    bodies.push_back(ellipsoid::from_map(gaussian_vector(gen, d), t));
    bodies.push_back(polytope(random_points(gen, d, 2 * d + 4)));
    for (const auto& k : bodies) {
      const convex_body p = project_body(k, e);
      for (int s = 0; s < 5; ++s) {
        const VectorXd y = uniform_sphere(gen, e.dim());
        EXPECT_NEAR(p.support(y), k.support(e.embed(y)), 1e-9);
      }
    }
  }
}

TEST(Volume, BallClosedForms) {
  EXPECT_NEAR(volume(convex_body::unit_ball(3)).value, 4 * pi / 3, 1e-14);
  EXPECT_NEAR(volume(convex_body::unit_ball(2)).value, pi, 1e-14);
  EXPECT_DOUBLE_EQ(unit_ball_volume(1), 2.0);
  for (int m = 1; m <= 10; ++m) EXPECT_NEAR(unit_ball_volume(m), oracle::ball_volume(m), 1e-12);
}

TEST(Volume, PolytopeHullMatchesFacetEnumeration) {
  rng gen(5);
  for (int d = 2; d <= 4; ++d) {
    for (int trial = 0; trial < 5; ++trial) {
      const MatrixXd pts = random_points(gen, d, 12);
      const double exact = convex_hull(pts).volume();
      EXPECT_NEAR(exact, oracle::brute_force_hull_volume(pts), 1e-10 * std::max(1.0, exact));
    }
  }
}

TEST(Volume, MonteCarloFourPolytopeWithinThreeSigma) {
  rng gen(23);
  const MatrixXd pts = random_points(gen, 4, 14);
  const convex_body k = polytope(pts);
  const estimate v = volume(k, {400000, 99});
  EXPECT_GT(v.std_error, 0.0);
  EXPECT_LE(std::abs(v.value - oracle::brute_force_hull_volume(pts)), 3.0 * v.std_error);
}

TEST(Volume, DegenerateThrows) {
  MatrixXd flat(3, 4);
  flat << 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0;
  EXPECT_THROW(polytope{flat}, error);
}

TEST(Mvee, SquareGivesBallThroughVertices) {
  MatrixXd sq(2, 4);
  sq << 1, -1, 1, -1, 1, 1, -1, -1;
  const auto e = mvee(sq, 1e-6);
  EXPECT_NEAR((e.body.shape() - 0.5 * MatrixXd::Identity(2, 2)).norm(), 0.0, 1e-5);
  EXPECT_NEAR(e.body.center().norm(), 0.0, 1e-9);
}

TEST(Mvee, TriangleGivesCircumcircle) {
  MatrixXd tri(2, 3);
  for (int j = 0; j < 3; ++j) {
    tri(0, j) = std::cos(2 * pi * j / 3);
    tri(1, j) = std::sin(2 * pi * j / 3);
  }
  const auto e = mvee(tri, 1e-6);
  EXPECT_NEAR((e.body.shape() - MatrixXd::Identity(2, 2)).norm(), 0.0, 1e-5);
}

TEST(Mvee, RandomPointsMatchIndependentSolver) {
  rng gen(31);
  const MatrixXd pts = random_points(gen, 3, 50);
  const auto e = mvee(pts, 1e-5);
  const auto ref = oracle::multiplicative_mvee(pts);
  const double vol = unit_ball_volume(3) / std::sqrt(e.body.shape_determinant());
  EXPECT_LE(std::abs(vol / ref.volume - 1.0), 1e-3);
}

TEST(Mvee, ContainsAllAndShrinkExcludesOne) {
  rng gen(37);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + trial % 3;
    const MatrixXd pts = random_points(gen, d, 30);
    const double tol = 1e-4;
    const auto e = mvee(pts, tol);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < pts.cols(); ++j) worst = std::max(worst, e.body.gauge(pts.col(j)));
    EXPECT_LE(worst, 1.0 + tol);
    EXPECT_GT(worst, 1.0 - 10 * tol);  // shrunk ellipsoid misses the farthest point
  }
}

TEST(Mvee, ErrorPaths) {
  MatrixXd flat(2, 4);
  flat << 0, 1, 2, 3, 0, 1, 2, 3;
  EXPECT_THROW(mvee(flat), error);
  MatrixXd sq(2, 4);
  sq << 1, -1, 1, -1, 1, 1, -1, -1;
  EXPECT_THROW(mvee(sq, 0.1), error);
  try {
    rng gen(1);
    mvee(random_points(gen, 3, 40), 1e-3, 1);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::no_convergence);
  }
}

TEST(BanachMazur, SquareAndTriangle) {
  const auto sq = banach_mazur_upper(convex_body::cube(2, -1, 1).as_polytope(), 1e-6);
  EXPECT_TRUE(sq.symmetric);
  EXPECT_NEAR(sq.certified, std::sqrt(2.0), 1e-4);
  MatrixXd tri(2, 3);
  tri << 0, 1, 0.3, 0, 0, 2;
  const auto t = banach_mazur_upper(polytope(tri), 1e-6);
  EXPECT_FALSE(t.symmetric);
  EXPECT_NEAR(t.certified, 2.0, 1e-3);
  EXPECT_LE(t.certified, t.john + 1e-3);
}

TEST(MaxProjection, BallIsConstant) {
  const auto r = max_hyperplane_projection(convex_body::unit_ball(3), 8, 10);
  EXPECT_NEAR(r.value, pi, 1e-14);
}

TEST(MaxProjection, CubeMatchesBruteForceDirections) {
  const auto r = max_hyperplane_projection(convex_body::cube(3), 24, 40);
  rng gen(41);
  double brute = 0.0;
  for (int s = 0; s < 1000000; ++s) {
    const VectorXd u = uniform_sphere(gen, 3);
    brute = std::max(brute, u.cwiseAbs().sum());  // unit-cube shadow area
  }
  EXPECT_NEAR(r.value, std::sqrt(3.0), 1e-9);
  EXPECT_GE(r.value, brute - 1e-12);
  // Any sign pattern of (1,1,1) is a maximizer.
  EXPECT_NEAR((r.u.normalized().cwiseAbs() - vec({1, 1, 1}) / std::sqrt(3.0)).norm(), 0.0, 1e-6);
}

TEST(MaxProjection, FlatPolytopeMatchesShadowHull) {
  rng gen(43);
  MatrixXd pts = random_points(gen, 3, 10);
  pts.row(2) *= 1e-2;
  pts.row(1) *= 0.1;
  const convex_body k = polytope(pts);
  const auto r = max_hyperplane_projection(k, 16, 30);
  const frame e = complement(orthonormalize(MatrixXd(r.u)));
  const double oracle_area = oracle::polygon_hull_area(e.columns().transpose() * pts);
  EXPECT_NEAR(r.value, oracle_area, 1e-4);
}

TEST(MaxProjection, FourDimensionalPolytopeDominatesGrid) {
  rng gen(47);
  const convex_body k = polytope(random_points(gen, 4, 12));
  const auto r = max_hyperplane_projection(k, 8, 20);
  EXPECT_GE(r.value, r.best_grid_value);
  EXPECT_NEAR(r.value, hyperplane_projection_volume_by_shadow(k, r.u), 1e-9);
}

TEST(MaxProjection, UnsupportedDimension) {
  try {
    max_hyperplane_projection(convex_body::unit_ball(5));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::unsupported_dimension);
  }
}

TEST(Cauchy, PolygonPerimeterAndBall) {
  rng gen(53);
  for (int trial = 0; trial < 10; ++trial) {
    const convex_body k = polytope(random_points(gen, 2, 9));
    const auto& h = k.as_polytope().hull();
    std::vector<Eigen::Vector2d> ccw;
    for (int i : h.polygon_cycle()) ccw.emplace_back(h.points().col(i));
    const double perim = oracle::polygon_perimeter(ccw);
    EXPECT_NEAR(surface_area(k), perim, 1e-12 * perim);
    EXPECT_NEAR(cauchy_surface_quadrature(k) / perim, 1.0, 5e-3);
  }
  EXPECT_NEAR(cauchy_surface_quadrature(convex_body::unit_ball(3)), 4 * pi, 1e-9);
  EXPECT_NEAR(cauchy_surface_quadrature(convex_body::cube(3)), 6.0, 6e-2);
}

TEST(Cauchy, ConstantClosedFormAndGrowth) {
  EXPECT_NEAR(cauchy_constant(2), pi / 2, 1e-15);
  for (int d : {10, 20, 40}) {
    const double ratio = cauchy_constant(d) / std::sqrt(pi * d / 2);
    EXPECT_GE(ratio, 0.95);
    EXPECT_LE(ratio, 1.05);
  }
}

TEST(Slice, BallSlicesInClosedForm) {
  const convex_body b = convex_body::unit_ball(3);
  const frame h = coordinate_frame(3, {1, 2});
  EXPECT_NEAR(slice_volume(b, h, vec({0, 0, 0})).value, pi, 1e-13);
  EXPECT_NEAR(slice_volume(b, h, vec({0.6, 5, -2})).value, pi * 0.64, 1e-13);
  EXPECT_EQ(slice_volume(b, h, vec({1.2, 0, 0})).value, 0.0);
}

TEST(Slice, EllipsoidSliceMatchesAffineImage) {
  rng gen(59);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 3 + trial % 3;
    const frame h = orthonormalize(random_points(gen, d, 2));
    const VectorXd c = gaussian_vector(gen, d) * 0.1;
    const double radius = 1.3;
    const convex_body b = ball{c, radius};
    const convex_body e = ellipsoid::from_map(c, radius * MatrixXd::Identity(d, d));
    const VectorXd x = 0.3 * gaussian_vector(gen, d);
    EXPECT_NEAR(slice_volume(b, h, x).value, slice_volume(e, h, x).value, 1e-12);
  }
}

TEST(Slice, CubeSectionsExact) {
  const convex_body cube = convex_body::cube(3);
  // Plane through the center orthogonal to (1,1,1) cuts a regular hexagon.
  const frame h = complement(orthonormalize(MatrixXd(vec({1, 1, 1}))));
  const double side = std::sqrt(2.0) / 2;
  EXPECT_NEAR(slice_volume(cube, h, vec({0.5, 0.5, 0.5})).value, 1.5 * std::sqrt(3.0) * side * side, 1e-12);
  // Axis-aligned lines have length one.
  EXPECT_NEAR(slice_volume(cube, coordinate_frame(3, {0}), vec({0.5, 0.2, 0.9})).value, 1.0, 1e-12);
  EXPECT_EQ(slice_volume(cube, coordinate_frame(3, {0}), vec({0.5, 1.2, 0.9})).value, 0.0);
}

TEST(Slice, MaxSliceOfBoxAndBall) {
  const convex_body box = convex_body::box(vec({0, 0, 0}), vec({1, 2, 3}));
  const frame h = coordinate_frame(3, {2});
  const auto r = max_slice(box, h, shadow_region(box, complement(h)));
  EXPECT_NEAR(r.value, 3.0, 1e-12);
  EXPECT_FALSE(r.unstable);
  const convex_body b = convex_body::unit_ball(3);
  const frame line = coordinate_frame(3, {0});
  const auto rb = max_slice(b, line, shadow_region(b, complement(line)));
  EXPECT_NEAR(rb.value, 2.0, 1e-9);
}
