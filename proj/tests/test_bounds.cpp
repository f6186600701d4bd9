#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cylpack/bounds.hpp"
#include "cylpack/cap_packing.hpp"
#include "cylpack/instances.hpp"
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

const convex_body disk2 = convex_body::unit_ball(2);

frame axis_frame(int d, std::initializer_list<int> axes) {
  MatrixXd m(d, static_cast<Eigen::Index>(axes.size()));
  int j = 0;
  for (int a : axes) m.col(j++) = VectorXd::Unit(d, a);
  return orthonormalize(m);
}

errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return errc::domain_error;
}

}  // namespace

TEST(Report, Tolerances) {
  const auto exact = make_report("x", 1.0 + 5e-10, 1.0, relation::le);
  EXPECT_TRUE(exact.pass);
  EXPECT_FALSE(exact.probabilistic);
  EXPECT_FALSE(make_report("x", 1.0 + 2e-9, 1.0, relation::le).pass);
  const auto mc = make_report("x", 1.2, 1.0, relation::le, 0.1);
  EXPECT_TRUE(mc.probabilistic);
  EXPECT_NEAR(mc.tolerance, 0.3, 1e-15);
  EXPECT_TRUE(mc.pass);
  EXPECT_FALSE(make_report("x", 0.5, 1.0, relation::ge, 0.1).pass);
}

// ------------------------------------------------------------- coverings

TEST(CoveringLower, PartitionEqualityEllipsoidMode) {
  const auto fam = plank_partition(disk2, vec({1, 0}), 5, 1);
  const auto rep = check_covering_lower(disk2, fam, 1, covering_mode::ellipsoid_k1);
  EXPECT_TRUE(rep.pass);
  EXPECT_NEAR(rep.lhs, 1.0, 1e-12);
  EXPECT_NEAR(rep.slack, 0.0, 1e-12);
}

TEST(CoveringLower, RepeatedPartition) {
  const auto fam = plank_partition(disk2, vec({0.6, 0.8}), 4, 3);
  const auto rep = check_covering_lower(disk2, fam, 3, covering_mode::ellipsoid_k1);
  EXPECT_NEAR(rep.lhs, 3.0, 1e-12);
  EXPECT_TRUE(rep.pass);
}

TEST(CoveringLower, RedundantEllipseCovering) {
  rng gen(1);
  for (int trial = 0; trial < 10; ++trial) {
    const convex_body k = random_ellipsoid(2, gen);
    const auto fam = random_plank_covering(k, 1, derive_seed(2, trial));
    const auto rep = check_covering_lower(k, fam, 1, covering_mode::ellipsoid_k1);
    EXPECT_TRUE(rep.pass);
    EXPECT_GT(rep.slack, 0.0);
  }
}

TEST(CoveringLower, GeneralModeOnPolytopes) {
  rng gen(3);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = 3 + trial % 2, kk = 1 + trial % 2, r = 1 + trial % 3;
    const convex_body k = random_polytope(d, d + 5, gen);
    const auto rep = check_covering_lower(k, random_tile_covering(k, kk, r, derive_seed(4, trial)), r,
                                          covering_mode::general);
    EXPECT_TRUE(rep.pass) << trial;
    EXPECT_NEAR(rep.rhs, r / binomial(d, kk), 1e-15);
  }
}

TEST(CoveringLower, RejectsNonCovering) {
  auto fam = plank_partition(disk2, vec({1, 0}), 5, 1);
  fam.pop_back();
  EXPECT_EQ(code_of([&] { check_covering_lower(disk2, fam, 1, covering_mode::general); }), errc::not_a_covering);
  EXPECT_EQ(code_of([&] { check_covering_lower(convex_body::cube(2), plank_partition(convex_body::cube(2), vec({1, 0}), 3, 1), 1,
                                               covering_mode::ellipsoid_k1); }),
            errc::domain_error);
}

// --------------------------------------------------------------- packings

TEST(PackingUpper, PartitionEquality) {
  const auto rep = check_packing_upper_ellipsoid(disk2, plank_partition(disk2, vec({1, 0}), 5, 1), 1);
  EXPECT_TRUE(rep.pass);
  EXPECT_NEAR(rep.lhs, 1.0, 1e-12);
  const auto twice = check_packing_upper_ellipsoid(disk2, plank_partition(disk2, vec({1, 0}), 5, 2), 2);
  EXPECT_NEAR(twice.lhs, 2.0, 1e-12);
  EXPECT_TRUE(twice.pass);
}

TEST(PackingUpper, CapFamilyInFourBall) {
  cap_family fam;
  theorem_example_report(4, 1, 0.3, 7, {.verify_samples = 0}, &fam);
  const auto rep = check_packing_upper_ellipsoid(convex_body::unit_ball(4), fam.cylinders, 1);
  EXPECT_TRUE(rep.pass);
  EXPECT_LE(rep.lhs, 1.0);
}

TEST(PackingUpper, EqualityWitnessesBothModes) {
  // Plank partitions pack and cover at once, so both bounds are tight.
  rng gen(5);
  for (int trial = 0; trial < 5; ++trial) {
    const convex_body k = random_ellipsoid(2, gen);
    const auto fam = plank_partition(k, uniform_sphere(gen, 2), 3 + trial, 1 + trial % 2, derive_seed(6, trial));
    const int r = 1 + trial % 2;
    const auto up = check_packing_upper_ellipsoid(k, fam, r);
    const auto low = check_covering_lower(k, fam, r, covering_mode::ellipsoid_k1);
    EXPECT_NEAR(up.lhs, r, 1e-9);
    EXPECT_TRUE(up.pass && low.pass);
  }
  for (int d = 3; d <= 5; ++d) {
    const auto fam = full_shadow_family(d, 2, 2, 7 + d);
    EXPECT_NEAR(check_packing_upper_ellipsoid(convex_body::unit_ball(d), fam, 2).lhs, 2.0, 1e-9);
  }
}

TEST(PackingUpper, RandomPackingsHold) {
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 3 + trial % 3, kk = 1 + trial % 2, r = 1 + trial % 3;
    auto fam = random_axis_packing(d, kk, r, derive_seed(8, trial), {.allow_disks = false});
    rng gen(derive_seed(9, trial));
    const MatrixXd t = random_linear_map(d, gen);
    const VectorXd shift = gaussian_vector(gen, d);
    const convex_body k = transform(convex_body::unit_ball(d), t, shift);
    const auto rep = check_packing_upper_ellipsoid(k, transform_family(fam, t, shift), r);
    EXPECT_TRUE(rep.pass) << trial;
  }
}

TEST(PackingUpper, RejectsOverpacking) {
  auto fam = plank_partition(disk2, vec({1, 0}), 5, 1);
  fam.push_back(fam[1]);
  EXPECT_EQ(code_of([&] { check_packing_upper_ellipsoid(disk2, fam, 1); }), errc::not_a_packing);
}

TEST(PackingScaled, EllipsoidReducesToUnscaled) {
  const auto rep = check_packing_scaled(disk2, plank_partition(disk2, vec({1, 0}), 4, 1), 1);
  EXPECT_DOUBLE_EQ(rep.rhs, 1.0);
}

TEST(PackingScaled, SquareAndTriangle) {
  const convex_body square = convex_body::cube(2, -1, 1);
  const auto sq = check_packing_scaled(square, plank_partition(square, vec({1, 0}), 4, 1), 1);
  EXPECT_TRUE(sq.pass);
  EXPECT_LE(sq.rhs, std::sqrt(2.0) + 1e-4);
  MatrixXd tri(2, 3);
  tri << 0, 1, 0.3, 0, 0, 0.8;
  const convex_body t = polytope(tri);
  const auto tr = check_packing_scaled(t, plank_partition(t, vec({0, 1}), 3, 1), 1);
  EXPECT_TRUE(tr.pass);
  EXPECT_LE(tr.rhs, 2.0 + 1e-4);
}

// ------------------------------------------------------------ slice bound

TEST(Covcylgen, FullCircularCylinder) {
  const convex_body b = convex_body::unit_ball(3);
  const std::vector<cylinder> fam{cylinder(axis_frame(3, {0, 1}), disk_base{vec({0, 0}), 1.0})};
  const auto rep = check_covcylgen(b, fam, 1);
  EXPECT_NEAR(rep.lhs, 1.0, 1e-12);
  EXPECT_NEAR(rep.rhs, 3.0, 1e-3);
  EXPECT_TRUE(rep.pass);
}

TEST(Covcylgen, BoxProductCase) {
  const convex_body box = convex_body::cube(3);
  MatrixXd sq(2, 4);
  sq << 0, 1, 0, 1, 0, 0, 1, 1;
  const std::vector<cylinder> fam{cylinder(axis_frame(3, {0, 1}), polytope_base{sq})};
  const auto rep = check_covcylgen(box, fam, 1);
  EXPECT_NEAR(rep.lhs, 1.0, 1e-9);
  EXPECT_NEAR(rep.slack, binomial(3, 1) - 1, 1e-6);
}

TEST(Covcylgen, CapFamilyRatio) {
  cap_family fam;
  theorem_example_report(4, 1, 0.3, 11, {.verify_samples = 0}, &fam);
  const auto rep = check_covcylgen(convex_body::unit_ball(4), fam.cylinders, 1, {.samples = 5000});
  EXPECT_TRUE(rep.pass);
  double ratio = 0.0;
  for (auto& [key, v] : rep.extras) {
    if (key == "max_slice_ratio") ratio = v;
  }
  EXPECT_NEAR(ratio, 1 / std::sin(0.3), 0.02 / std::sin(0.3));
}

// -------------------------------------------------------- slice-projection

TEST(RogersShephard, BoxEquality) {
  VectorXd lo = vec({0, 0, 0}), hi = vec({1, 2, 0.5});
  const convex_body box = convex_body::box(lo, hi);
  const auto rs = check_rogers_shephard(box, axis_frame(3, {0}));
  EXPECT_NEAR(rs.lower.lhs, 1.0, 1e-9);
  EXPECT_NEAR(rs.lower.slack, 0.0, 1e-9);
  EXPECT_TRUE(rs.lower.pass && rs.upper.pass);
}

TEST(RogersShephard, BallClosedForm) {
  const auto rs = check_rogers_shephard(convex_body::unit_ball(3), axis_frame(3, {2}));
  EXPECT_NEAR(rs.upper.lhs, 2 * pi, 1e-6);
  EXPECT_NEAR(rs.upper.rhs, 4 * pi, 1e-9);
  EXPECT_NEAR(rs.lower.rhs, 4 * pi / 3, 1e-9);
  EXPECT_TRUE(rs.upper.pass && rs.lower.pass);
}

TEST(RogersShephard, RandomPolytopes) {
  rng gen(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 3;
    const convex_body k = random_polytope(d, d + 4, gen);
    const int kk = 1 + trial % (d - 1);
    MatrixXd g(d, kk);
    for (int j = 0; j < kk; ++j) g.col(j) = gaussian_vector(gen, d);
    const auto rs = check_rogers_shephard(k, orthonormalize(g));
    EXPECT_TRUE(rs.upper.pass) << trial;
    EXPECT_TRUE(rs.lower.pass) << trial;
  }
}

// ------------------------------------------------------------- projections

TEST(Pack1cyl, PlanarConstant) { EXPECT_NEAR(cauchy_constant(2), pi / 2, 1e-15); }

TEST(Pack1cyl, DiskPartition) {
  const auto rep = check_pack1cyl(disk2, plank_partition(disk2, vec({1, 0}), 5, 1), 1);
  EXPECT_NEAR(rep.lhs, 2.0, 1e-12);
  EXPECT_NEAR(rep.rhs, pi, 1e-6);
  EXPECT_TRUE(rep.pass);
}

TEST(Pack1cyl, RandomPolygonStrips) {
  rng gen(13);
  for (int trial = 0; trial < 10; ++trial) {
    const convex_body k = random_polytope(2, 7, gen);
    const int r = 1 + trial % 3;
    std::vector<cylinder> fam;
    for (const auto& p : random_plank_packing_2d(region_of(k), r, 30, derive_seed(14, trial))) fam.push_back(to_cylinder(p));
    if (fam.empty()) continue;
    EXPECT_TRUE(check_pack1cyl(k, fam, r).pass) << trial;
    EXPECT_TRUE(check_cauchy_formula(k).pass) << trial;
  }
}

TEST(Cauchy, PolygonPerimeterOracle) {
  rng gen(15);
  const convex_body k = random_polytope(2, 9, gen);
  const MatrixXd& v = k.as_polytope().vertices();
  // Order the vertices by angle around their centroid.
  const Eigen::Vector2d c = v.rowwise().mean();
  std::vector<Eigen::Vector2d> ccw;
  for (Eigen::Index j = 0; j < v.cols(); ++j) ccw.emplace_back(v(0, j), v(1, j));
  std::sort(ccw.begin(), ccw.end(), [&](const auto& a, const auto& b) {
    return std::atan2(a.y() - c.y(), a.x() - c.x()) < std::atan2(b.y() - c.y(), b.x() - c.x());
  });
  EXPECT_NEAR(surface_area(k), oracle::polygon_perimeter(ccw), 1e-12);
  EXPECT_NEAR(cauchy_surface_quadrature(k), oracle::polygon_perimeter(ccw), 5e-3 * oracle::polygon_perimeter(ccw));
}

TEST(Cauchy, ConstantAsymptotics) {
  for (int d : {10, 20, 40}) EXPECT_TRUE(check_cd_asymptotic(d).pass) << d;
}

TEST(Experiment, RunsWithoutAssertions) {
  const auto ex = symmetric_plank_experiment(convex_body::cube(2, -1, 1), 2, 10, 16);
  EXPECT_EQ(ex.trials, 10);
  EXPECT_TRUE(std::isfinite(ex.min_ratio) || ex.best.empty());
}
