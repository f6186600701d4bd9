#pragma once

// Minimum-volume enclosing ellipsoid by Khachiyan's coordinate ascent with
// Todd-Yildirim away steps, and the Banach-Mazur bound it certifies.

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "cylpack/convex_body.hpp"
#include "cylpack/core/errors.hpp"

namespace cylpack {

struct enclosing_ellipsoid {
  ellipsoid body;
  double containment_tolerance = 0.0;
  int iterations = 0;
};

/// points: d x n. The returned ellipsoid is scaled so that the farthest input
/// point lies exactly on its boundary.
inline enclosing_ellipsoid mvee(const Eigen::MatrixXd& points, double tol = 1e-4, int max_iter = 200000) {
  require(tol > 0.0 && tol <= 1e-3, errc::domain_error, "mvee tolerance must lie in (0, 1e-3]");
  const int d = static_cast<int>(points.rows());
  const int n = static_cast<int>(points.cols());
  require(d >= 1 && n >= d + 1, errc::rank_deficient, "mvee needs at least d+1 points");
  {
    const Eigen::MatrixXd centered = points.colwise() - points.rowwise().mean();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered);
    const auto& s = svd.singularValues();
    require(s(d - 1) > 1e-10 * std::max(1.0, s(0)), errc::rank_deficient, "points do not span R^d");
  }

  Eigen::MatrixXd q(d + 1, n);
  q.topRows(d) = points;
  q.row(d).setOnes();
  Eigen::VectorXd u = Eigen::VectorXd::Constant(n, 1.0 / n);
  const double target = d + 1.0;
  int iter = 0;
  for (;; ++iter) {
    require(iter < max_iter, errc::no_convergence, "mvee did not converge in " + std::to_string(max_iter) + " steps");
    const Eigen::MatrixXd x = q * u.asDiagonal() * q.transpose();
    const Eigen::LLT<Eigen::MatrixXd> llt(x);
    const Eigen::MatrixXd solved = llt.solve(q);
    const Eigen::VectorXd m = (q.array() * solved.array()).colwise().sum().transpose();
    Eigen::Index up = 0;
    const double m_max = m.maxCoeff(&up);
    double m_min = INFINITY;
    Eigen::Index down = -1;
    for (int i = 0; i < n; ++i) {
      if (u(i) > 0.0 && m(i) < m_min) {
        m_min = m(i);
        down = i;
      }
    }
    const double eps_up = m_max / target - 1.0;
    const double eps_down = 1.0 - m_min / target;
    if (eps_up <= tol && eps_down <= tol) break;
    if (eps_up >= eps_down) {
      const double step = (m_max - target) / (target * (m_max - 1.0));
      u *= (1.0 - step);
      u(up) += step;
    } else {
      // Away step, clipped so the weight stays nonnegative.
      double step = (target - m_min) / (target * (m_min - 1.0));
      step = std::min(step, u(down) / (1.0 - u(down)));
      u *= (1.0 + step);
      u(down) -= step;
      u(down) = std::max(0.0, u(down));
    }
  }

  const Eigen::VectorXd c = points * u;
  const Eigen::MatrixXd cov = points * u.asDiagonal() * points.transpose() - c * c.transpose();
  Eigen::MatrixXd shape = cov.inverse() / d;
  shape = 0.5 * (shape + shape.transpose());
  double g = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd y = points.col(i) - c;
    g = std::max(g, y.dot(shape * y));
  }
  shape /= g;
  return {ellipsoid::from_shape(c, shape), tol, iter};
}

struct banach_mazur_bound {
  double certified = 0.0;  // 1/s with c + s (E - c) inside K
  double john = 0.0;       // d, or sqrt(d) for centrally symmetric K
  bool symmetric = false;
  ellipsoid outer;         // T B_2^d
};

/// True when the vertex set is invariant under x -> 2c - x for its centroid c.
inline bool centrally_symmetric(const Eigen::MatrixXd& verts, double tol = 1e-9) {
  const Eigen::VectorXd c = verts.rowwise().mean();
  const double scale = std::max(1.0, (verts.colwise() - c).colwise().norm().maxCoeff());
  for (Eigen::Index j = 0; j < verts.cols(); ++j) {
    const Eigen::VectorXd mirror = 2.0 * c - verts.col(j);
    if ((verts.colwise() - mirror).colwise().norm().minCoeff() > tol * scale) return false;
  }
  return true;
}

/// Upper bound for the Banach-Mazur distance of a polytope to the ball:
/// K sits inside its enclosing ellipsoid E, and the ellipsoid shrunk about its
/// center by s = min_f (b_f - <n_f, c>) / |E^{-1/2} n_f| sits inside K.
inline banach_mazur_bound banach_mazur_upper(const polytope& k, double tol = 1e-5) {
  const Eigen::MatrixXd& verts = k.vertices();
  banach_mazur_bound out;
  out.outer = mvee(verts, tol).body;
  const int d = k.dim();
  out.symmetric = centrally_symmetric(verts);
  out.john = out.symmetric ? std::sqrt(static_cast<double>(d)) : static_cast<double>(d);
  const auto& h = k.hull();
  double s = INFINITY;
  for (Eigen::Index f = 0; f < h.normal_matrix().rows(); ++f) {
    const Eigen::VectorXd n = h.normal_matrix().row(f).transpose();
    const double gap = h.offsets()(f) - n.dot(out.outer.center());
    s = std::min(s, gap / std::sqrt(n.dot(out.outer.inverse_shape() * n)));
  }
  require(s > 0.0, errc::degenerate_body, "enclosing ellipsoid center lies outside the polytope");
  out.certified = 1.0 / s;
  return out;
}

}  // namespace cylpack
