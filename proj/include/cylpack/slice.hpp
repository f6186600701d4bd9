#pragma once

// Volumes of affine sections K ∩ (x + H) and their maxima over translates.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "cylpack/convex_body.hpp"
#include "cylpack/core/estimate.hpp"
#include "cylpack/frame.hpp"

namespace cylpack {

namespace detail {

// Vertices of {t in R^m : a t <= b} by enumerating m-subsets of constraints.
inline Eigen::MatrixXd enumerate_vertices(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol) {
  const int rows = static_cast<int>(a.rows());
  const int m = static_cast<int>(a.cols());
  std::vector<Eigen::VectorXd> found;
  std::vector<int> pick(m);
  std::function<void(int, int)> rec = [&](int depth, int start) {
    if (depth == m) {
      Eigen::MatrixXd sub(m, m);
      Eigen::VectorXd rhs(m);
      for (int i = 0; i < m; ++i) {
        sub.row(i) = a.row(pick[i]);
        rhs(i) = b(pick[i]);
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
      if (lu.rank() < m) return;
      if (std::abs(lu.determinant()) < 1e-12) return;
      const Eigen::VectorXd t = lu.solve(rhs);
      if (((a * t - b).array() <= tol).all()) found.push_back(t);
      return;
    }
    for (int i = start; i < rows; ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  Eigen::MatrixXd out(m, static_cast<Eigen::Index>(found.size()));
  for (std::size_t j = 0; j < found.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = found[j];
  return out;
}

// Volume of the H-polytope {t : a t <= b} in R^m; zero if empty or flat.
inline estimate h_polytope_volume(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& lo,
                                  const Eigen::VectorXd& hi, const volume_options& opt) {
  const int m = static_cast<int>(a.cols());
  const double scale = std::max(1.0, (hi - lo).norm());
  const double tol = 1e-10 * scale;
  if (m == 1) {
    double lower = -INFINITY, upper = INFINITY;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const double c = a(i, 0);
      if (std::abs(c) < 1e-14) {
        if (b(i) < -tol) return {0.0, 0.0};
        continue;
      }
      if (c > 0) {
        upper = std::min(upper, b(i) / c);
      } else {
        lower = std::max(lower, b(i) / c);
      }
    }
    return {std::max(0.0, upper - lower), 0.0};
  }
  if (m <= 3) {
    const Eigen::MatrixXd verts = enumerate_vertices(a, b, tol);
    if (verts.cols() < m + 1) return {0.0, 0.0};
    try {
      return {convex_hull(verts).volume(), 0.0};
    } catch (const error&) {
      return {0.0, 0.0};
    }
  }
  rng gen(opt.seed);
  double box = 1.0;
  for (int i = 0; i < m; ++i) box *= std::max(0.0, hi(i) - lo(i));
  if (box == 0.0) return {0.0, 0.0};
  Eigen::VectorXd t(m);
  long hits = 0;
  for (long s = 0; s < opt.samples; ++s) {
    for (int i = 0; i < m; ++i) t(i) = uniform(gen, lo(i), hi(i));
    if (((a * t - b).array() <= 0.0).all()) ++hits;
  }
  const double p = static_cast<double>(hits) / opt.samples;
  return {box * p, box * std::sqrt(std::max(p * (1 - p), 1.0 / opt.samples) / opt.samples)};
}

}  // namespace detail

/// vol_k(K ∩ (x + span H)) where H is a k-frame. Exact for balls, ellipsoids
/// and polytope sections of dimension <= 3.
inline estimate slice_volume(const convex_body& body, const frame& h, const Eigen::VectorXd& x,
                             const volume_options& opt = {}) {
  require(h.ambient_dim() == body.dim() && x.size() == body.dim(), errc::dimension_mismatch,
          "slice frame and point must live in the body's space");
  const int k = h.dim();
  const Eigen::MatrixXd& hc = h.columns();
  if (body.is_ellipsoidal()) {
    // (x + H t - c)^T Q (x + H t - c) <= 1 is a k-ellipsoid in t.
    const ellipsoid e = body.to_ellipsoid();
    const Eigen::MatrixXd a = hc.transpose() * e.shape() * hc;
    const Eigen::VectorXd y = x - e.center();
    const Eigen::VectorXd lin = hc.transpose() * e.shape() * y;
    const double q0 = y.dot(e.shape() * y) - lin.dot(a.ldlt().solve(lin));
    if (q0 >= 1.0) return {0.0, 0.0};
    return {unit_ball_volume(k) * std::pow(1.0 - q0, 0.5 * k) / std::sqrt(a.determinant()), 0.0};
  }
  const auto& hull = body.as_polytope().hull();
  const Eigen::MatrixXd a = hull.normal_matrix() * hc;
  const Eigen::VectorXd b = hull.offsets() - hull.normal_matrix() * x;
  const Eigen::MatrixXd verts = body.as_polytope().vertices();
  const Eigen::MatrixXd coords = hc.transpose() * (verts.colwise() - x);
  return detail::h_polytope_volume(a, b, coords.rowwise().minCoeff(), coords.rowwise().maxCoeff(), opt);
}

/// Region of E-coordinates over which translates are searched.
struct slice_region {
  Eigen::VectorXd lo, hi;                          // bounding box in E-coordinates
  std::function<bool(const Eigen::VectorXd&)> inside;
  Eigen::VectorXd hint;                            // a point of the region
};

struct max_slice_options {
  int grid = 0;  // points per axis at each level; 0 picks by dimension
  int levels = 3;
  double instability = 0.05;
  volume_options volume{};
};

struct max_slice_result {
  double value = 0.0;
  Eigen::VectorXd argmax;       // E-coordinates
  std::vector<double> levels;   // best value after each grid level
  double std_error = 0.0;
  bool unstable = false;
};

/// max over y in the region of vol_k(K ∩ (E y + span H)), where E spans
/// the complement of H. Coarse-to-fine grids followed by a compass search; the
/// k-th root of the section volume is concave, so the search cannot stall
/// at a spurious local maximum.
inline max_slice_result max_slice(const convex_body& body, const frame& e, const frame& h,
                                  const slice_region& region, const max_slice_options& opt = {}) {
  require(e.dim() + h.dim() == body.dim(), errc::dimension_mismatch, "E and H must be complementary");
  const int m = e.dim();
  const int grid = opt.grid > 0 ? opt.grid : (m == 1 ? 41 : m == 2 ? 15 : m == 3 ? 9 : 5);
  max_slice_result out;
  auto eval = [&](const Eigen::VectorXd& y, double& se) -> double {
    if (!region.inside(y)) return -1.0;
    const estimate v = slice_volume(body, h, e.embed(y), opt.volume);
    se = v.std_error;
    return v.value;
  };

  double se = 0.0;
  out.argmax = region.hint;
  out.value = std::max(0.0, eval(region.hint, se));
  out.std_error = se;

  Eigen::VectorXd lo = region.lo, hi = region.hi;
  for (int level = 0; level < opt.levels; ++level) {
    Eigen::VectorXd step = (hi - lo) / std::max(1, grid - 1);
    std::vector<int> idx(m, 0);
    for (;;) {
      Eigen::VectorXd y(m);
      for (int i = 0; i < m; ++i) y(i) = lo(i) + idx[i] * step(i);
      const double v = eval(y, se);
      if (v > out.value) {
        out.value = v;
        out.argmax = y;
        out.std_error = se;
      }
      int i = 0;
      while (i < m && ++idx[i] == grid) idx[i++] = 0;
      if (i == m) break;
    }
    out.levels.push_back(out.value);
    lo = (out.argmax - step).cwiseMax(region.lo);
    hi = (out.argmax + step).cwiseMin(region.hi);
  }

  // Compass search polish.
  Eigen::VectorXd step = (hi - lo) / 2.0;
  const double floor = 1e-9 * std::max(1.0, (region.hi - region.lo).norm());
  while (step.maxCoeff() > floor) {
    bool moved = false;
    for (int i = 0; i < m && !moved; ++i) {
      for (double sign : {1.0, -1.0}) {
        Eigen::VectorXd y = out.argmax;
        y(i) += sign * step(i);
        const double v = eval(y, se);
        if (v > out.value * (1 + 1e-15) + 1e-300) {
          out.value = v;
          out.argmax = y;
          out.std_error = se;
          moved = true;
          break;
        }
      }
    }
    if (!moved) step /= 2.0;
  }
  out.levels.push_back(out.value);
  if (out.value > 0.0 && !out.levels.empty()) {
    out.unstable = (out.value - out.levels.front()) / out.value > opt.instability;
  }
  return out;
}

/// As above with E taken as the complement of H.
inline max_slice_result max_slice(const convex_body& body, const frame& h, const slice_region& region,
                                  const max_slice_options& opt = {}) {
  return max_slice(body, complement(h), h, region, opt);
}

/// Region covering the whole shadow P_E K.
inline slice_region shadow_region(const convex_body& body, const frame& e) {
  const convex_body shadow = project_body(body, e);
  slice_region r;
  r.lo = shadow.box_lo();
  r.hi = shadow.box_hi();
  r.hint = shadow.center();
  r.inside = [shadow](const Eigen::VectorXd& y) { return shadow.contains(y, -1e-12); };
  return r;
}

}  // namespace cylpack
