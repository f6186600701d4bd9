#pragma once

// Seeded generators for the instances the checkers run on: plank partitions,
// random r-fold packings separated along a common axis, redundant coverings
// by tiles, random polytopes and ellipsoids, and affine images of families.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cylpack/convex_body.hpp"
#include "cylpack/core/errors.hpp"
#include "cylpack/core/random.hpp"
#include "cylpack/cylinder.hpp"
#include "cylpack/frame.hpp"

namespace cylpack {

/// The plank {x : a <= <x,u> <= b} as a (d-1)-codimensional cylinder.
inline cylinder plank(const Eigen::VectorXd& u, double a, double b) {
  require(b > a, errc::domain_error, "plank needs a < b");
  const frame e = orthonormalize(Eigen::MatrixXd(u));
  Eigen::MatrixXd seg(1, 2);
  seg << a, b;
  return cylinder(e, polytope_base{seg});
}

/// n parallel planks normal to u that tile the width of K, listed r times.
/// Cut points are random (or equally spaced when seed is zero); consecutive
/// planks share their boundary value exactly.
inline std::vector<cylinder> plank_partition(const convex_body& k, const Eigen::VectorXd& u, int n, int r,
                                             std::uint64_t seed = 0) {
  require(n >= 1 && r >= 1, errc::domain_error, "partition needs n >= 1 and r >= 1");
  require(u.size() == k.dim(), errc::dimension_mismatch, "direction has wrong length");
  const Eigen::VectorXd v = u.normalized();
  const double lo = -k.support(-v), hi = k.support(v);
  std::vector<double> cuts{lo, hi};
  rng gen(seed);
  for (int i = 1; i < n; ++i) cuts.push_back(seed == 0 ? lo + (hi - lo) * i / n : uniform(gen, lo, hi));
  std::sort(cuts.begin(), cuts.end());
  std::vector<cylinder> out;
  for (int rep = 0; rep < r; ++rep) {
    for (int i = 0; i < n; ++i) out.push_back(plank(v, cuts[i], cuts[i + 1]));
  }
  return out;
}

/// r copies of the cylinder whose base is the whole shadow of the unit ball
/// on a random (d-k)-frame: each restricted set is the ball itself.
inline std::vector<cylinder> full_shadow_family(int d, int k, int r, std::uint64_t seed) {
  rng gen(seed);
  std::vector<cylinder> out;
  for (int i = 0; i < r; ++i) {
    Eigen::MatrixXd g(d, d - k);
    for (int j = 0; j < d - k; ++j) g.col(j) = gaussian_vector(gen, d);
    out.emplace_back(orthonormalize(g), disk_base{Eigen::VectorXd::Zero(d - k), 1.0});
  }
  return out;
}

struct axis_packing_options {
  int per_layer_min = 2;
  int per_layer_max = 6;
  bool allow_disks = true;    // disk bases cannot be mapped to ellipsoids
  bool allow_tilted = true;   // tilted planks when d - k = 1
  double shrink = 0.35;       // largest fraction trimmed from an allotted interval
};

namespace detail {

/// Extent of {x in B_2^d : s0 <= <x,u> <= s1} along a; the maximum of
/// a t + b sqrt(1 - t^2) over t in [s0, s1] sits at t = a, clamped.
inline std::pair<double, double> ball_slab_extent(const Eigen::VectorXd& a, const Eigen::VectorXd& u, double s0,
                                                  double s1) {
  auto top = [&](const Eigen::VectorXd& dir) {
    const double al = dir.dot(u);
    const double be = std::sqrt(std::max(0.0, 1.0 - al * al));
    const double t = std::clamp(al, s0, s1);
    return al * t + be * std::sqrt(std::max(0.0, 1.0 - t * t));
  };
  return {-top(-a), top(a)};
}

/// Random points of {y in B_2^m : lo <= y_0 <= hi}, shrunk towards the
/// axis so the hull is safely inside.
inline Eigen::MatrixXd slab_points(rng& gen, int m, double lo, double hi, int count) {
  Eigen::MatrixXd p(m, count);
  for (int j = 0; j < count; ++j) {
    const double y0 = uniform(gen, lo, hi);
    p(0, j) = y0;
    if (m > 1) {
      const double rad = std::sqrt(std::max(0.0, 1.0 - y0 * y0));
      p.col(j).tail(m - 1) = rad * uniform_ball(gen, m - 1);
    }
  }
  return p;
}

inline frame frame_with_first(rng& gen, const Eigen::VectorXd& a, int m) {
  const int d = static_cast<int>(a.size());
  Eigen::MatrixXd g(d, m);
  g.col(0) = a;
  for (int j = 1; j < m; ++j) g.col(j) = gaussian_vector(gen, d);
  return orthonormalize(g);
}

}  // namespace detail

/// Random r-fold packing of k-codimensional cylinders in B_2^d. Every
/// restricted set projects onto a common axis inside an allotted interval,
/// and the intervals come in r layers of pairwise disjoint ones, so no
/// point lies in more than r interiors.
inline std::vector<cylinder> random_axis_packing(int d, int k, int r, std::uint64_t seed,
                                                 const axis_packing_options& opt = {}) {
  require(d >= 2 && k >= 1 && k < d && r >= 1, errc::domain_error, "need 1 <= k < d and r >= 1");
  rng gen(seed);
  const int m = d - k;
  const Eigen::VectorXd a = uniform_sphere(gen, d);
  std::vector<cylinder> out;
  for (int layer = 0; layer < r; ++layer) {
    const int pieces =
        opt.per_layer_min + static_cast<int>(uniform01(gen) * (opt.per_layer_max - opt.per_layer_min + 1));
    std::vector<double> cuts{-1.0, 1.0};
    for (int i = 1; i < pieces; ++i) cuts.push_back(uniform(gen, -1.0, 1.0));
    std::sort(cuts.begin(), cuts.end());
    for (int i = 0; i < pieces; ++i) {
      const double w = cuts[i + 1] - cuts[i];
      if (w < 1e-6) continue;
      // Trim each side by a random share; zero keeps neighbours tangent.
      const double lo = cuts[i] + (uniform01(gen) < 0.5 ? 0.0 : uniform01(gen) * opt.shrink * w);
      const double hi = cuts[i + 1] - (uniform01(gen) < 0.5 ? 0.0 : uniform01(gen) * opt.shrink * w);
      const double choice = uniform01(gen);
      if (m == 1 && opt.allow_tilted && choice < 0.5) {
        // Tilted plank: shrink the tilt and width until its extent fits.
        double tilt = uniform(gen, 0.0, 0.6);
        bool placed = false;
        for (int attempt = 0; attempt < 60 && !placed; ++attempt) {
          Eigen::VectorXd side = gaussian_vector(gen, d);
          side -= side.dot(a) * a;
          side.normalize();
          const Eigen::VectorXd u = std::cos(tilt) * a + std::sin(tilt) * side;
          const double mid = 0.5 * (lo + hi);
          const double sc = mid * a.dot(u);
          double half = 0.5 * (hi - lo);
          for (int it = 0; it < 40; ++it) {
            const auto [jl, jh] = detail::ball_slab_extent(a, u, sc - half, sc + half);
            const double s0 = std::max(-1.0, sc - half), s1 = std::min(1.0, sc + half);
            if (jl >= lo && jh <= hi && s1 > s0) {
              out.push_back(plank(u, s0, s1));
              placed = true;
              break;
            }
            half *= 0.8;
          }
          tilt *= 0.7;
        }
        if (placed) continue;
      }
      const frame e = detail::frame_with_first(gen, a, m);
      if (m == 1) {
        Eigen::MatrixXd seg(1, 2);
        seg << lo, hi;
        out.emplace_back(e, polytope_base{seg});
      } else if (opt.allow_disks && (choice > 0.7 || m >= 4)) {
        const double mid = 0.5 * (lo + hi);
        Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
        c(0) = mid;
        const double room = std::sqrt(std::max(0.0, 1.0 - mid * mid));
        c.tail(m - 1) = uniform01(gen) * 0.5 * room * uniform_sphere(gen, m - 1);
        const double radius = std::min(0.5 * (hi - lo), 1.0 - c.norm()) * uniform(gen, 0.6, 1.0);
        if (radius <= 1e-9) continue;
        out.emplace_back(e, disk_base{c, radius});
      } else {
        out.emplace_back(e, polytope_base{detail::slab_points(gen, m, lo, hi, m + 3 + static_cast<int>(uniform01(gen) * 5))});
      }
    }
  }
  return out;
}

/// Well-conditioned random linear map (singular values in [0.5, 2]).
inline Eigen::MatrixXd random_linear_map(int d, rng& gen) {
  Eigen::MatrixXd g(d, d);
  for (int j = 0; j < d; ++j) g.col(j) = gaussian_vector(gen, d);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr1(g);
  for (int j = 0; j < d; ++j) g.col(j) = gaussian_vector(gen, d);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr2(g);
  Eigen::VectorXd s(d);
  for (int i = 0; i < d; ++i) s(i) = std::exp(uniform(gen, std::log(0.5), std::log(2.0)));
  return Eigen::MatrixXd(qr1.householderQ()) * s.asDiagonal() * Eigen::MatrixXd(qr2.householderQ());
}

inline std::vector<cylinder> transform_family(const std::vector<cylinder>& family, const Eigen::MatrixXd& t,
                                              const Eigen::VectorXd& shift) {
  std::vector<cylinder> out;
  out.reserve(family.size());
  for (const auto& c : family) out.push_back(transform(c, t, shift));
  return out;
}

/// Convex hull of n random points on (or in) the unit ball.
inline convex_body random_polytope(int d, int n, rng& gen, bool on_sphere = false) {
  require(n >= d + 1, errc::domain_error, "random polytope needs n >= d+1 points");
  for (;;) {
    Eigen::MatrixXd p(d, n);
    for (int j = 0; j < n; ++j) p.col(j) = on_sphere ? uniform_sphere(gen, d) : uniform_ball(gen, d);
    try {
      convex_body k = polytope(p);
      if (k.as_polytope().hull().volume() > 1e-3) return k;
    } catch (const error&) {
    }
  }
}

inline convex_body random_ellipsoid(int d, rng& gen) {
  Eigen::VectorXd c(d);
  for (int i = 0; i < d; ++i) c(i) = uniform(gen, -1.0, 1.0);
  return ellipsoid::from_map(c, random_linear_map(d, gen));
}

struct tile_covering_options {
  int cells_min = 2;
  int cells_max = 4;
  double extra = 0.3;  // share of tiles duplicated to make the cover redundant
};

/// r-fold covering of K by k-codimensional cylinders (d - k <= 3): r
/// independent grids of box tiles over the shadow of K on random frames,
/// each keeping only the tiles that meet the shadow's bounding box, plus a
/// few duplicated tiles. Every layer alone covers K.
inline std::vector<cylinder> random_tile_covering(const convex_body& k, int kk, int r, std::uint64_t seed,
                                                  const tile_covering_options& opt = {}) {
  const int d = k.dim();
  const int m = d - kk;
  require(kk >= 1 && kk < d && m <= 3, errc::domain_error, "tile coverings need 1 <= k < d and d - k <= 3");
  rng gen(seed);
  std::vector<cylinder> out;
  for (int layer = 0; layer < r; ++layer) {
    Eigen::MatrixXd g(d, m);
    for (int j = 0; j < m; ++j) g.col(j) = gaussian_vector(gen, d);
    const frame e = orthonormalize(g);
    const convex_body shadow = project_body(k, e);
    const Eigen::VectorXd lo = shadow.box_lo(), hi = shadow.box_hi();
    std::vector<int> cells(m);
    for (int i = 0; i < m; ++i) cells[i] = opt.cells_min + static_cast<int>(uniform01(gen) * (opt.cells_max - opt.cells_min + 1));
    // Grid shifted by a random phase and padded by one cell so the box is covered.
    std::vector<double> step(m), start(m);
    std::vector<int> count(m);
    for (int i = 0; i < m; ++i) {
      step[i] = (hi(i) - lo(i)) / cells[i];
      start[i] = lo(i) - uniform01(gen) * step[i];
      count[i] = cells[i] + 1;
    }
    std::vector<int> idx(m, 0);
    for (;;) {
      Eigen::VectorXd tlo(m), thi(m);
      for (int i = 0; i < m; ++i) {
        tlo(i) = start[i] + idx[i] * step[i];
        thi(i) = tlo(i) + step[i];
      }
      const int nv = 1 << m;
      Eigen::MatrixXd verts(m, nv);
      for (int j = 0; j < nv; ++j) {
        for (int i = 0; i < m; ++i) verts(i, j) = (j >> i) & 1 ? thi(i) : tlo(i);
      }
      out.emplace_back(e, polytope_base{verts});
      if (uniform01(gen) < opt.extra) out.emplace_back(e, polytope_base{verts});
      int i = 0;
      while (i < m && ++idx[i] == count[i]) idx[i++] = 0;
      if (i == m) break;
    }
  }
  return out;
}

/// r-fold covering by planks normal to random directions: each layer is a
/// chain of overlapping planks spanning the width of K.
inline std::vector<cylinder> random_plank_covering(const convex_body& k, int r, std::uint64_t seed, int per_layer = 4) {
  const int d = k.dim();
  rng gen(seed);
  std::vector<cylinder> out;
  for (int layer = 0; layer < r; ++layer) {
    const Eigen::VectorXd u = uniform_sphere(gen, d);
    const double lo = -k.support(-u), hi = k.support(u);
    std::vector<double> cuts{lo, hi};
    for (int i = 1; i < per_layer; ++i) cuts.push_back(uniform(gen, lo, hi));
    std::sort(cuts.begin(), cuts.end());
    const double pad = 0.05 * (hi - lo);
    for (int i = 0; i < per_layer; ++i) {
      const double a = std::max(lo, cuts[i] - uniform01(gen) * pad);
      const double b = std::min(hi, cuts[i + 1] + uniform01(gen) * pad);
      if (b > a) out.push_back(plank(u, a, b));
    }
  }
  return out;
}

}  // namespace cylpack
