#pragma once

// Convex bodies carried in closed form (ball, ellipsoid) or as vertex lists
// (polytope). Supports support functions, membership, uniform sampling,
// orthogonal projection onto a frame, and volumes.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>

#include <Eigen/Dense>

#include "cylpack/core/errors.hpp"
#include "cylpack/core/estimate.hpp"
#include "cylpack/core/random.hpp"
#include "cylpack/frame.hpp"
#include "cylpack/hull.hpp"
#include "cylpack/special_functions.hpp"

namespace cylpack {

struct ball {
  Eigen::VectorXd center;
  double radius = 1.0;
};

/// {x : (x - c)^T Q (x - c) <= 1} with Q symmetric positive definite.
class ellipsoid {
 public:
  ellipsoid() = default;

  static ellipsoid from_shape(Eigen::VectorXd center, const Eigen::MatrixXd& shape) {
    require(shape.rows() == shape.cols() && shape.rows() == center.size(), errc::dimension_mismatch,
            "ellipsoid shape must be d x d");
    const Eigen::MatrixXd sym = 0.5 * (shape + shape.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
    require(eig.eigenvalues().minCoeff() > 0.0, errc::domain_error, "ellipsoid shape must be positive definite");
    ellipsoid e;
    e.center_ = std::move(center);
    e.shape_ = sym;
    e.inverse_shape_ = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() *
                       eig.eigenvectors().transpose();
    e.root_ = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
              eig.eigenvectors().transpose();
    e.det_shape_ = eig.eigenvalues().prod();
    return e;
  }

  /// c + T B^d.
  static ellipsoid from_map(Eigen::VectorXd center, const Eigen::MatrixXd& map) {
    const Eigen::MatrixXd inv_shape = map * map.transpose();
    return from_shape(std::move(center), inv_shape.inverse());
  }

  /// Ellipsoid given by its inverse shape form Q^{-1} (Gram form of the semi-axes).
  static ellipsoid from_inverse_shape(Eigen::VectorXd center, const Eigen::MatrixXd& inverse_shape) {
    return from_shape(std::move(center), inverse_shape.inverse());
  }

  int dim() const { return static_cast<int>(center_.size()); }
  const Eigen::VectorXd& center() const { return center_; }
  const Eigen::MatrixXd& shape() const { return shape_; }
  const Eigen::MatrixXd& inverse_shape() const { return inverse_shape_; }
  /// Symmetric square root of Q^{-1}: the ellipsoid is center + root * B^d.
  const Eigen::MatrixXd& root() const { return root_; }
  double shape_determinant() const { return det_shape_; }

  double gauge(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd y = x - center_;
    return std::sqrt(std::max(0.0, y.dot(shape_ * y)));
  }

 private:
  Eigen::VectorXd center_;
  Eigen::MatrixXd shape_;
  Eigen::MatrixXd inverse_shape_;
  Eigen::MatrixXd root_;
  double det_shape_ = 1.0;
};

/// Convex hull of finitely many vertices; must be full-dimensional.
class polytope {
 public:
  polytope() = default;
  explicit polytope(Eigen::MatrixXd vertices) : hull_(std::move(vertices)), extreme_(hull_.vertices()) {}

  int dim() const { return hull_.dim(); }
  const convex_hull& hull() const { return hull_; }
  const Eigen::MatrixXd& points() const { return hull_.points(); }
  /// Extreme points only.
  const Eigen::MatrixXd& vertices() const { return extreme_; }

 private:
  convex_hull hull_;
  Eigen::MatrixXd extreme_;
};

struct volume_options {
  long samples = 200000;
  std::uint64_t seed = 0x5eedULL;
};

class convex_body {
 public:
  using variant_type = std::variant<ball, ellipsoid, polytope>;

  convex_body() = default;
  convex_body(ball b) : v_(std::move(b)) {
    require(std::get<ball>(v_).radius > 0.0, errc::domain_error, "ball radius must be positive");
    init_box();
  }
  convex_body(ellipsoid e) : v_(std::move(e)) { init_box(); }
  convex_body(polytope p) : v_(std::move(p)) { init_box(); }

  static convex_body unit_ball(int d) { return ball{Eigen::VectorXd::Zero(d), 1.0}; }
  static convex_body cube(int d, double lo = 0.0, double hi = 1.0) {
    const int n = 1 << d;
    Eigen::MatrixXd v(d, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < d; ++i) v(i, j) = (j >> i) & 1 ? hi : lo;
    }
    return polytope(std::move(v));
  }
  static convex_body box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    const int d = static_cast<int>(lo.size());
    const int n = 1 << d;
    Eigen::MatrixXd v(d, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < d; ++i) v(i, j) = (j >> i) & 1 ? hi(i) : lo(i);
    }
    return polytope(std::move(v));
  }

  const variant_type& shape() const { return v_; }
  bool is_ball() const { return std::holds_alternative<ball>(v_); }
  bool is_ellipsoid() const { return std::holds_alternative<ellipsoid>(v_); }
  bool is_polytope() const { return std::holds_alternative<polytope>(v_); }
  /// Balls count as ellipsoids for the ellipsoid-only bounds.
  bool is_ellipsoidal() const { return is_ball() || is_ellipsoid(); }
  const ball& as_ball() const { return std::get<ball>(v_); }
  const ellipsoid& as_ellipsoid() const { return std::get<ellipsoid>(v_); }
  const polytope& as_polytope() const { return std::get<polytope>(v_); }

  /// The ellipsoid form of a ball or ellipsoid.
  ellipsoid to_ellipsoid() const {
    if (is_ellipsoid()) return as_ellipsoid();
    require(is_ball(), errc::domain_error, "body is not ellipsoidal");
    const auto& b = as_ball();
    const int d = static_cast<int>(b.center.size());
    return ellipsoid::from_shape(b.center, Eigen::MatrixXd::Identity(d, d) / (b.radius * b.radius));
  }

  int dim() const {
    return std::visit(
        [](const auto& s) -> int {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, ball>) {
            return static_cast<int>(s.center.size());
          } else {
            return s.dim();
          }
        },
        v_);
  }

  /// h_K(u) = sup over K of <x, u>.
  double support(const Eigen::VectorXd& u) const {
    require(u.size() == dim(), errc::dimension_mismatch, "support direction has wrong length");
    if (is_ball()) {
      const auto& b = as_ball();
      return b.center.dot(u) + b.radius * u.norm();
    }
    if (is_ellipsoid()) {
      const auto& e = as_ellipsoid();
      return e.center().dot(u) + std::sqrt(std::max(0.0, u.dot(e.inverse_shape() * u)));
    }
    return (as_polytope().vertices().transpose() * u).maxCoeff();
  }

  /// Signed inner depth, comparable with `margin` in contains().
  double depth(const Eigen::VectorXd& x) const {
    if (is_ball()) {
      const auto& b = as_ball();
      return b.radius - (x - b.center).norm();
    }
    if (is_ellipsoid()) return 1.0 - as_ellipsoid().gauge(x);
    return as_polytope().hull().depth(x);
  }

  /// margin > 0 demands the strict interior, margin < 0 grants a tolerance.
  bool contains(const Eigen::VectorXd& x, double margin = 0.0) const {
    require(x.size() == dim(), errc::dimension_mismatch, "point has wrong length");
    return depth(x) >= margin;
  }

  const Eigen::VectorXd& box_lo() const { return lo_; }
  const Eigen::VectorXd& box_hi() const { return hi_; }

  /// A point of the interior.
  Eigen::VectorXd center() const {
    if (is_ball()) return as_ball().center;
    if (is_ellipsoid()) return as_ellipsoid().center();
    return as_polytope().hull().interior_point();
  }

  /// Uniform sample. Polytopes use bounding-box rejection and throw
  /// SamplingFailure when acceptance falls below 1e-4.
  Eigen::VectorXd sample(rng& gen) const {
    const int d = dim();
    if (is_ball()) {
      const auto& b = as_ball();
      return b.center + b.radius * uniform_ball(gen, d);
    }
    if (is_ellipsoid()) {
      const auto& e = as_ellipsoid();
      return e.center() + e.root() * uniform_ball(gen, d);
    }
    const auto& h = as_polytope().hull();
    Eigen::VectorXd x(d);
    for (long tries = 1;; ++tries) {
      for (int i = 0; i < d; ++i) x(i) = uniform(gen, lo_(i), hi_(i));
      if (h.contains(x)) return x;
      require(tries < 100000, errc::sampling_failure, "rejection acceptance below 1e-4");
    }
  }

 private:
  void init_box() {
    const int d = dim();
    lo_.resize(d);
    hi_.resize(d);
    for (int i = 0; i < d; ++i) {
      const Eigen::VectorXd e = Eigen::VectorXd::Unit(d, i);
      hi_(i) = support(e);
      lo_(i) = -support(-e);
    }
  }

  variant_type v_;
  Eigen::VectorXd lo_, hi_;
};

/// Shadow P_E K written in the coordinates of E.
inline convex_body project_body(const convex_body& k, const frame& e) {
  require(e.ambient_dim() == k.dim(), errc::dimension_mismatch,
          "frame lives in R^" + std::to_string(e.ambient_dim()) + ", body in R^" + std::to_string(k.dim()));
  const Eigen::MatrixXd& c = e.columns();
  if (k.is_ball()) {
    const auto& b = k.as_ball();
    return ball{c.transpose() * b.center, b.radius};
  }
  if (k.is_ellipsoid()) {
    const auto& el = k.as_ellipsoid();
    const Eigen::MatrixXd restricted = c.transpose() * el.inverse_shape() * c;
    return ellipsoid::from_inverse_shape(c.transpose() * el.center(), restricted);
  }
  Eigen::MatrixXd proj = c.transpose() * k.as_polytope().vertices();
  try {
    return polytope(std::move(proj));
  } catch (const error& ex) {
    throw error(errc::degenerate_projection, ex.what());
  }
}

/// Monte Carlo volume by bounding-box rejection with its standard error.
inline estimate monte_carlo_volume(const convex_body& k, const volume_options& opt = {}) {
  rng gen(opt.seed);
  const int d = k.dim();
  double box = 1.0;
  for (int i = 0; i < d; ++i) box *= k.box_hi()(i) - k.box_lo()(i);
  Eigen::VectorXd x(d);
  long hits = 0;
  for (long s = 0; s < opt.samples; ++s) {
    for (int i = 0; i < d; ++i) x(i) = uniform(gen, k.box_lo()(i), k.box_hi()(i));
    if (k.contains(x)) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(opt.samples);
  const double se = box * std::sqrt(std::max(p * (1.0 - p), 1.0 / opt.samples) / opt.samples);
  return {box * p, se};
}

/// Exact for balls, ellipsoids and polytopes up to dimension 3; polytopes in
/// dimension >= 4 use Monte Carlo and report a standard error.
inline estimate volume(const convex_body& k, const volume_options& opt = {}) {
  const int m = k.dim();
  require(m >= 1, errc::domain_error, "volume needs dimension >= 1");
  if (k.is_ball()) return {unit_ball_volume(m) * std::pow(k.as_ball().radius, m), 0.0};
  if (k.is_ellipsoid()) return {unit_ball_volume(m) / std::sqrt(k.as_ellipsoid().shape_determinant()), 0.0};
  if (m <= 3) {
    const double v = k.as_polytope().hull().volume();
    require(v > 0.0, errc::degenerate_body, "polytope has zero volume");
    return {v, 0.0};
  }
  const estimate v = monte_carlo_volume(k, opt);
  require(v.value > 0.0, errc::degenerate_body, "polytope has zero volume");
  return v;
}

}  // namespace cylpack
