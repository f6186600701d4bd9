#pragma once

// Volumes of hyperplane projections, their maximum over directions, and the
// Cauchy surface-area formula.

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include "cylpack/convex_body.hpp"
#include "cylpack/frame.hpp"
#include "cylpack/special_functions.hpp"

namespace cylpack {

/// vol_{d-1}(P_{u^perp} K) for a unit vector u.
inline double hyperplane_projection_volume(const convex_body& body, const Eigen::VectorXd& u) {
  const int d = body.dim();
  require(u.size() == d, errc::dimension_mismatch, "direction has wrong length");
  require(d >= 2, errc::unsupported_dimension, "hyperplane projection needs d >= 2");
  const Eigen::VectorXd v = u.normalized();
  if (body.is_ball()) return unit_ball_volume(d - 1) * std::pow(body.as_ball().radius, d - 1);
  if (body.is_ellipsoid()) {
    // det(C^T Q^{-1} C) = det(Q^{-1}) * u^T Q u for the complement C of u.
    const ellipsoid& e = body.as_ellipsoid();
    return unit_ball_volume(d - 1) * std::sqrt(v.dot(e.shape() * v) / e.shape_determinant());
  }
  const auto& h = body.as_polytope().hull();
  double total = 0.0;
  for (const auto& f : h.facets()) total += std::abs(v.dot(f.normal)) * h.facet_area(f);
  return 0.5 * total;
}

/// Same quantity by projecting the body into u^perp and measuring the shadow.
inline double hyperplane_projection_volume_by_shadow(const convex_body& body, const Eigen::VectorXd& u,
                                                     const volume_options& opt = {}) {
  const frame e = complement(orthonormalize(Eigen::MatrixXd(u)));
  return volume(project_body(body, e), opt).value;
}

namespace detail {

// Unit vector from d-1 hyperspherical angles.
inline Eigen::VectorXd direction_from_angles(const Eigen::VectorXd& angles) {
  const int d = static_cast<int>(angles.size()) + 1;
  Eigen::VectorXd u(d);
  double tail = 1.0;
  for (int i = 0; i < d - 1; ++i) {
    u(i) = tail * std::cos(angles(i));
    tail *= std::sin(angles(i));
  }
  u(d - 1) = tail;
  return u;
}

}  // namespace detail

struct direction_max {
  Eigen::VectorXd u;
  double value = 0.0;
  double best_grid_value = 0.0;
};

/// Direction maximizing the hyperplane projection volume: an angle grid refined
/// by a compass search with `refine_iters` step halvings.
inline direction_max max_hyperplane_projection(const convex_body& body, int grid = 24, int refine_iters = 30) {
  const int d = body.dim();
  require(d >= 2 && d <= 4, errc::unsupported_dimension, "direction search supports d in {2, 3, 4}");
  require(grid >= 2, errc::domain_error, "grid needs at least two points per angle");
  const int a = d - 1;
  const double pi = std::numbers::pi;
  auto value_at = [&](const Eigen::VectorXd& ang) {
    return hyperplane_projection_volume(body, detail::direction_from_angles(ang));
  };

  direction_max out;
  Eigen::VectorXd best_angles(a);
  out.value = -1.0;
  // Projections are even in u: the first angle covers [0, pi/2] (or [0, pi)
  // when it is the only one), middle angles [0, pi], the last a full turn.
  std::vector<int> idx(a, 0);
  std::vector<int> count(a);
  std::vector<double> span(a);
  for (int i = 0; i < a; ++i) {
    if (a == 1) {
      span[i] = pi / grid;
      count[i] = grid;
    } else if (i == 0) {
      span[i] = 0.5 * pi / grid;
      count[i] = grid + 1;
    } else if (i == a - 1) {
      span[i] = 2.0 * pi / grid;
      count[i] = grid;
    } else {
      span[i] = pi / grid;
      count[i] = grid + 1;
    }
  }
  for (;;) {
    Eigen::VectorXd ang(a);
    for (int i = 0; i < a; ++i) ang(i) = span[i] * idx[i];
    const double v = value_at(ang);
    if (v > out.value) {
      out.value = v;
      best_angles = ang;
    }
    int i = 0;
    while (i < a && ++idx[i] == count[i]) idx[i++] = 0;
    if (i == a) break;
  }
  out.best_grid_value = out.value;

  double step = pi / grid;
  for (int it = 0; it < refine_iters; ++it) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < a && !moved; ++i) {
        for (double sign : {1.0, -1.0}) {
          Eigen::VectorXd ang = best_angles;
          ang(i) += sign * step;
          const double v = value_at(ang);
          if (v > out.value) {
            out.value = v;
            best_angles = ang;
            moved = true;
            break;
          }
        }
      }
    }
    step *= 0.5;
  }
  out.u = detail::direction_from_angles(best_angles);
  return out;
}

/// Constant of the plank-packing bound: d omega_d / (2 omega_{d-1}).
inline double cauchy_constant(int d) {
  require(d >= 2, errc::domain_error, "c_d needs d >= 2");
  return d * unit_ball_volume(d) / (2.0 * unit_ball_volume(d - 1));
}

/// Surface area (perimeter when d = 2) via Cauchy's formula
/// S(K) = (1/omega_{d-1}) * integral over S^{d-1} of vol_{d-1}(P_{u^perp} K).
/// Midpoint rule in the angle for d = 2; Gauss-Legendre in cos(theta) times a
/// uniform azimuth rule for d = 3.
inline double cauchy_surface_quadrature(const convex_body& body, int nodes = 2048) {
  const int d = body.dim();
  const double pi = std::numbers::pi;
  if (d == 2) {
    double sum = 0.0;
    for (int i = 0; i < nodes; ++i) {
      const double t = pi * (i + 0.5) / nodes;
      sum += hyperplane_projection_volume(body, Eigen::Vector2d(std::cos(t), std::sin(t)));
    }
    return sum * pi / nodes;  // (1/2) * integral over the full circle
  }
  require(d == 3, errc::unsupported_dimension, "Cauchy quadrature supports d in {2, 3}");
  const int nphi = std::max(16, nodes / 8);
  auto ring = [&](double z) {
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    double acc = 0.0;
    for (int j = 0; j < nphi; ++j) {
      const double phi = 2.0 * pi * (j + 0.5) / nphi;
      acc += hyperplane_projection_volume(body, Eigen::Vector3d(s * std::cos(phi), s * std::sin(phi), z));
    }
    return acc * 2.0 * pi / nphi;
  };
  // Upper hemisphere in z = cos(theta); projections are even in u.
  const double sum = boost::math::quadrature::gauss<double, 64>::integrate(ring, 0.0, 1.0);
  return 2.0 * sum / unit_ball_volume(2);
}

/// Exact boundary measure: facet areas for polytopes, closed forms for balls.
inline double surface_area(const convex_body& body) {
  const int d = body.dim();
  if (body.is_ball()) return d * unit_ball_volume(d) * std::pow(body.as_ball().radius, d - 1);
  require(body.is_polytope(), errc::domain_error, "exact surface area is available for balls and polytopes");
  return body.as_polytope().hull().surface_area();
}

}  // namespace cylpack
