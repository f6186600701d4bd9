#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cylpack/cap_packing.hpp"
#include "cylpack/instances.hpp"
#include "cylpack/multiplicity.hpp"
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

const convex_body disk2 = convex_body::unit_ball(2);

std::vector<cylinder> strips(std::initializer_list<std::pair<double, double>> ab) {
  std::vector<cylinder> out;
  for (auto [a, b] : ab) out.push_back(plank(vec({1, 0}), a, b));
  return out;
}

// Sorted circle angles of planar points; the gaps between neighbours.
std::vector<double> circle_gaps(const std::vector<VectorXd>& pts) {
  std::vector<double> ang;
  for (const auto& p : pts) ang.push_back(std::atan2(p(1), p(0)));
  std::sort(ang.begin(), ang.end());
  std::vector<double> gaps;
  for (std::size_t i = 0; i < ang.size(); ++i) {
    const double next = i + 1 < ang.size() ? ang[i + 1] : ang[0] + 2 * pi;
    gaps.push_back(next - ang[i]);
  }
  return gaps;
}

}  // namespace

// ------------------------------------------------------------ multiplicity

TEST(Multiplicity, DisjointStrips) {
  const auto rep = estimate_multiplicity(disk2, strips({{-0.8, -0.2}, {0.1, 0.5}}), 20000, 1);
  EXPECT_EQ(rep.max_mult, 1);
  EXPECT_EQ(rep.min_mult, 0);
  EXPECT_LT(rep.coverage_fraction, 1.0);
  EXPECT_LE(rep.min_mult, rep.max_mult);
}

TEST(Multiplicity, DuplicateStrip) {
  const auto fam = strips({{-0.3, 0.3}, {-0.3, 0.3}});
  const auto rep = estimate_multiplicity(disk2, fam, 20000, 2);
  EXPECT_EQ(rep.max_mult, 2);
  ASSERT_EQ(rep.witness_max.size(), 2);
  EXPECT_TRUE(fam[0].contains_interior(rep.witness_max));
}

TEST(Multiplicity, PartitionPacksAndCovers) {
  const auto fam = plank_partition(disk2, vec({1, 0}), 5, 1);
  EXPECT_TRUE(verify_packing(disk2, fam, 1, 20000, 3).pass);
  EXPECT_TRUE(verify_covering(disk2, fam, 1, 20000, 3).pass);
}

TEST(Multiplicity, DoubledPartition) {
  const auto fam = plank_partition(disk2, vec({0.6, 0.8}), 4, 2);
  EXPECT_TRUE(verify_packing(disk2, fam, 2, 20000, 4).pass);
  const auto once = verify_packing(disk2, fam, 1, 20000, 4);
  EXPECT_FALSE(once.pass);
  ASSERT_TRUE(once.witness.has_value());
  EXPECT_TRUE(verify_covering(disk2, fam, 2, 20000, 4).pass);
}

TEST(Multiplicity, GapIsFound) {
  auto fam = plank_partition(disk2, vec({1, 0}), 5, 1);
  fam.erase(fam.begin() + 2);
  const auto v = verify_covering(disk2, fam, 1, 20000, 5);
  EXPECT_FALSE(v.pass);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_GT((*v.witness)(0), -0.2 - 1e-12);
  EXPECT_LT((*v.witness)(0), 0.2 + 1e-12);
}

TEST(Multiplicity, BaseOutsideShadowFailsPacking) {
  const auto v = verify_packing(disk2, strips({{-1.5, -0.5}}), 1, 5000, 6);
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.failed_base, 0);
}

TEST(Multiplicity, AxisPackingsInThreeBall) {
  for (int trial = 0; trial < 5; ++trial) {
    const auto fam = random_axis_packing(3, 1, 1, derive_seed(77, trial),
                                         axis_packing_options{.per_layer_min = 15, .per_layer_max = 20});
    EXPECT_GE(fam.size(), 15u);
    EXPECT_TRUE(verify_packing(convex_body::unit_ball(3), fam, 1, 20000, 7).pass);
  }
}

TEST(Multiplicity, MonotoneUnderAddition) {
  auto fam = strips({{-0.9, -0.1}});
  const auto before = estimate_multiplicity(disk2, fam, 10000, 8);
  fam.push_back(plank(vec({0, 1}), -0.4, 0.4));
  const auto after = estimate_multiplicity(disk2, fam, 10000, 8);
  EXPECT_GE(after.max_mult, before.max_mult);
  EXPECT_GE(after.coverage_fraction, before.coverage_fraction);
}

TEST(Multiplicity, Reproducible) {
  const auto fam = random_axis_packing(4, 2, 2, 9);
  const auto a = estimate_multiplicity(convex_body::unit_ball(4), fam, 10000, 10);
  const auto b = estimate_multiplicity(convex_body::unit_ball(4), fam, 10000, 10);
  EXPECT_EQ(a.max_mult, b.max_mult);
  EXPECT_EQ(a.min_mult, b.min_mult);
  EXPECT_EQ(a.coverage_fraction, b.coverage_fraction);
  EXPECT_EQ(a.witness_max, b.witness_max);
}

// ---------------------------------------------------------------- instances

TEST(Instances, PartitionTilesWidth) {
  rng gen(12);
  const convex_body k = random_ellipsoid(3, gen);
  const VectorXd u = uniform_sphere(gen, 3);
  const auto fam = plank_partition(k, u, 6, 1, 99);
  double total = 0.0;
  for (const auto& c : fam) total += crv(k, c).value;
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(Instances, FullShadowFamily) {
  const auto fam = full_shadow_family(5, 2, 3, 13);
  for (const auto& c : fam) EXPECT_NEAR(crv(convex_body::unit_ball(5), c).value, 1.0, 1e-12);
}

TEST(Instances, TileCoveringCovers) {
  rng gen(14);
  const convex_body k = random_polytope(3, 10, gen);
  const auto fam = random_tile_covering(k, 1, 2, 15);
  EXPECT_TRUE(verify_covering(k, fam, 2, 20000, 16).pass);
}

TEST(Instances, PlankCoveringCovers) {
  rng gen(17);
  const convex_body k = random_ellipsoid(2, gen);
  EXPECT_TRUE(verify_covering(k, random_plank_covering(k, 3, 18), 3, 20000, 19).pass);
}

TEST(Instances, RandomPolytopeHasVolume) {
  rng gen(20);
  for (int d = 2; d <= 4; ++d) EXPECT_GT(volume(random_polytope(d, d + 3, gen)).value, 1e-3);
}

// --------------------------------------------------------------- cap packing

TEST(SeparatedSet, CircleGaps) {
  // A maximal set on the circle with separation s has every gap in (s, 2s].
  for (double s : {0.4, 1.0, pi / 2 - 1e-9}) {
    const auto set = build_separated_set(2, s, sphere_metric::geodesic, 21);
    ASSERT_TRUE(set.maximal);
    for (double g : circle_gaps(set.points)) {
      EXPECT_GT(g, s - 1e-12);
      EXPECT_LE(g, 2 * s + 1e-3);
    }
  }
  const auto quarter = build_separated_set(2, pi / 2 - 1e-9, sphere_metric::geodesic, 22);
  EXPECT_GE(quarter.points.size(), 3u);
  EXPECT_LE(quarter.points.size(), 4u);
}

TEST(SeparatedSet, CountingBoundInThreeSpace) {
  const auto set = build_separated_set(3, pi / 3, sphere_metric::geodesic, 23);
  EXPECT_TRUE(set.maximal);
  EXPECT_GE(set.points.size(), 1.0 / spherical_cap_fraction(3, pi / 3));
  EXPECT_GT(min_pairwise_distance(set), pi / 3 - 1e-12);
}

TEST(SeparatedSet, ProjectiveExcludesAntipodes) {
  const auto set = build_separated_set(4, 1.2, sphere_metric::projective, 24);
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    for (std::size_t j = i + 1; j < set.points.size(); ++j) {
      EXPECT_LT(std::abs(set.points[i].dot(set.points[j])), std::cos(1.2));
    }
  }
}

TEST(CapFamily, FrameStartsAtPole) {
  const auto set = build_separated_set(5, 0.6, sphere_metric::geodesic, 25);
  const auto fam = build_cap_family(set, 0.3, 2, 26);
  ASSERT_EQ(fam.cylinders.size(), set.points.size());
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    EXPECT_NEAR((fam.cylinders[i].e().column(0) - set.points[i]).norm(), 0.0, 1e-12);
    EXPECT_EQ(fam.cylinders[i].k(), 2);
  }
}

TEST(CapFamily, SliceAtPoleOffset) {
  // Single point e1, d = 4, k = 1: the k-dimensional slice of the restricted
  // cylinder through cos(delta) e1 is a segment of length 2 sin(delta).
  separated_set s;
  s.dim = 4;
  s.separation = 0.6;
  s.points = {VectorXd::Unit(4, 0)};
  const auto fam = build_cap_family(s, 0.3, 1, 27);
  const cylinder& c = fam.cylinders[0];
  const VectorXd y = std::cos(0.3) * VectorXd::Unit(4, 0);
  const double along = std::sqrt(1 - y.squaredNorm());
  EXPECT_NEAR(2 * along, std::pow(std::sin(0.3), 1) * unit_ball_volume(1), 1e-12);
  // The slice y + t h stays in C for |t| <= along and leaves the ball beyond.
  const VectorXd h = c.h().column(0);
  EXPECT_TRUE(c.contains(y + 0.999 * along * h));
  EXPECT_NEAR((y + along * h).norm(), 1.0, 1e-12);
}

TEST(CapFamily, TwoSeparatedPointsDoNotOverlap) {
  separated_set s;
  s.dim = 4;
  s.separation = 0.8;
  s.points = {VectorXd::Unit(4, 0), vec({std::cos(0.9), std::sin(0.9), 0, 0})};
  const auto fam = build_cap_family(s, 0.4, 1, 28);
  EXPECT_EQ(estimate_multiplicity(convex_body::unit_ball(4), fam.cylinders, 50000, 29).max_mult, 1);
}

TEST(CapFamily, SumCrvClosedForm) {
  cap_family fam;
  const auto rep = theorem_example_report(4, 2, 0.3, 30, {}, &fam);
  EXPECT_NEAR(rep.sum_crv, rep.n * cap_volume(2, 0.3) / pi, 1e-12);
  EXPECT_NEAR(rep.sum_crv_direct, rep.sum_crv, 1e-9);
  EXPECT_EQ(static_cast<int>(fam.cylinders.size()), rep.n);
}

TEST(CapReport, FourOneChain) {
  const auto rep = theorem_example_report(4, 1, 0.3, 7);
  EXPECT_TRUE(rep.maximal);
  EXPECT_TRUE(rep.caps_disjoint);
  EXPECT_TRUE(rep.link_counting);
  EXPECT_TRUE(rep.link_chain);
  EXPECT_TRUE(rep.link_sandwich);
  EXPECT_TRUE(rep.link_packing_upper);
  EXPECT_TRUE(rep.packing_verified);
  EXPECT_EQ(rep.max_multiplicity, 1);
  EXPECT_TRUE(rep.all_links);
  EXPECT_GT(rep.empirical_constant, 0.0);
  EXPECT_NEAR(rep.ratio_form_fraction, rep.cap_fraction_2delta, 1e-12);
}

TEST(CapReport, FiveTwoChain) {
  const auto rep = theorem_example_report(5, 2, 0.2, 31);
  EXPECT_TRUE(rep.all_links);
  EXPECT_TRUE(rep.packing_verified);
}

TEST(CapReport, SmallAngleLimit) {
  const auto a = theorem_example_report(4, 1, 0.3, 32, {.verify_samples = 0});
  const auto b = theorem_example_report(4, 1, 0.15, 32, {.verify_samples = 0});
  EXPECT_GT(b.n, a.n);
  EXPECT_LT(b.sum_crv, a.sum_crv);
  EXPECT_TRUE(b.link_chain);
}

TEST(CapReport, DefaultIsProjective) {
  const auto rep = theorem_example_report(4, 1, 0.3, 33, {.verify_samples = 0});
  EXPECT_EQ(rep.metric, "projective");
  EXPECT_FALSE(rep.two_sided);
  // Projective separation also keeps the antipodal caps apart.
  const auto both = theorem_example_report(4, 1, 0.3, 33, {.two_sided = true, .verify_samples = 20000});
  EXPECT_TRUE(both.caps_disjoint);
  EXPECT_TRUE(both.packing_verified);
  EXPECT_TRUE(both.all_links);
  EXPECT_NEAR(both.sum_crv, 2 * rep.sum_crv, 1e-12);
}

TEST(CapReport, GeodesicConvention) {
  const cap_report_options one{.metric = sphere_metric::geodesic, .verify_samples = 20000};
  const auto rep = theorem_example_report(4, 1, 0.3, 34, one);
  EXPECT_TRUE(rep.all_links);
  EXPECT_TRUE(rep.link_counting_one_sided);
  // Geodesic separation does not keep antipodal caps apart.
  auto two = one;
  two.two_sided = true;
  const auto both = theorem_example_report(4, 1, 0.3, 34, two);
  EXPECT_FALSE(both.caps_disjoint);
  EXPECT_FALSE(both.packing_verified);
  EXPECT_TRUE(both.link_chain);
}

TEST(CapReport, DomainErrors) {
  EXPECT_THROW(theorem_example_report(3, 1, 0.3, 1), error);
  EXPECT_THROW(theorem_example_report(4, 1, 0.9, 1), error);
  EXPECT_THROW(build_separated_set(3, 1.7, sphere_metric::geodesic, 1), error);
}
