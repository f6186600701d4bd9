#pragma once

// k-codimensional cylinders C = B + H, with the base B given in the
// coordinates of E = H^perp, and the cross-sectional volume crv_K(C).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "cylpack/convex_body.hpp"
#include "cylpack/core/estimate.hpp"
#include "cylpack/core/random.hpp"
#include "cylpack/frame.hpp"
#include "cylpack/special_functions.hpp"

namespace cylpack {

/// Margin used for strict-interior membership; tangency stays legal.
inline constexpr double interior_margin = 1e-12;

struct polytope_base {
  Eigen::MatrixXd vertices;  // (d-k) x n, E-coordinates
};

struct disk_base {
  Eigen::VectorXd center;  // E-coordinates
  double radius = 0.0;
};

/// S(pole, delta, E) = {z in B_2 ∩ E : <z, pole> >= cos delta}, or
/// |<z, pole>| >= cos delta when two_sided.
struct cap_base {
  Eigen::VectorXd pole;  // unit vector, E-coordinates
  double delta = 0.0;
  bool two_sided = true;
};

using cylinder_base = std::variant<polytope_base, disk_base, cap_base>;

inline std::string base_kind(const cylinder_base& b) {
  switch (b.index()) {
    case 0:
      return "polytope";
    case 1:
      return "disk";
    default:
      return "cap";
  }
}

class cylinder {
 public:
  cylinder() = default;

  cylinder(frame e, cylinder_base base) : e_(std::move(e)), base_(std::move(base)) {
    const int d = e_.ambient_dim();
    const int m = e_.dim();
    require(m >= 1 && m <= d - 1, errc::dimension_mismatch, "cylinder needs 1 <= k <= d-1");
    h_ = complement(e_);
    if (auto* p = std::get_if<polytope_base>(&base_)) {
      require(p->vertices.rows() == m, errc::dimension_mismatch, "polytope base lives in E-coordinates");
      hull_ = convex_hull(p->vertices);
    } else if (auto* c = std::get_if<disk_base>(&base_)) {
      require(c->center.size() == m, errc::dimension_mismatch, "disk base lives in E-coordinates");
      require(c->radius > 0.0, errc::degenerate_body, "disk base needs a positive radius");
    } else {
      auto& cap = std::get<cap_base>(base_);
      require(cap.pole.size() == m, errc::dimension_mismatch, "cap pole lives in E-coordinates");
      require(cap.delta > 0.0 && cap.delta < std::numbers::pi / 2, errc::domain_error,
              "cap angle must lie in (0, pi/2)");
      require(std::abs(cap.pole.norm() - 1.0) < 1e-12, errc::domain_error, "cap pole must be a unit vector");
      pole_world_ = e_.embed(cap.pole);
      cos_delta_ = std::cos(cap.delta);
    }
  }

  int ambient_dim() const { return e_.ambient_dim(); }
  int k() const { return ambient_dim() - e_.dim(); }
  const frame& e() const { return e_; }
  const frame& h() const { return h_; }
  const cylinder_base& base() const { return base_; }
  bool is_cap() const { return std::holds_alternative<cap_base>(base_); }
  const Eigen::VectorXd& pole_world() const { return pole_world_; }
  double cos_delta() const { return cos_delta_; }

  /// Signed depth of an E-coordinate point in the base (positive inside).
  double base_depth(const Eigen::VectorXd& y) const {
    switch (base_.index()) {
      case 0:
        return hull_.depth(y);
      case 1: {
        const auto& c = std::get<disk_base>(base_);
        return c.radius - (y - c.center).norm();
      }
      default: {
        const auto& c = std::get<cap_base>(base_);
        const double t = y.dot(c.pole);
        return std::min(1.0 - y.norm(), (c.two_sided ? std::abs(t) : t) - cos_delta_);
      }
    }
  }

  double depth(const Eigen::VectorXd& x) const {
    require(x.size() == ambient_dim(), errc::dimension_mismatch, "point has wrong dimension");
    return base_depth(e_.coordinates(x));
  }

  /// Closed membership: P_E x in B (boundary inside, rounding tolerated).
  bool contains(const Eigen::VectorXd& x) const { return depth(x) >= -interior_margin; }

  /// Strict interior: P_E x at depth beyond the interior margin.
  bool contains_interior(const Eigen::VectorXd& x) const { return depth(x) > interior_margin; }

  /// vol_{d-k}(B). Cap volumes come from the closed form.
  estimate base_volume(const volume_options& opt = {}) const {
    const int m = e_.dim();
    switch (base_.index()) {
      case 0:
        return volume(convex_body(polytope(std::get<polytope_base>(base_).vertices)), opt);
      case 1:
        return {unit_ball_volume(m) * std::pow(std::get<disk_base>(base_).radius, m), 0.0};
      default: {
        const auto& c = std::get<cap_base>(base_);
        return {(c.two_sided ? 2.0 : 1.0) * cap_volume(m, c.delta), 0.0};
      }
    }
  }

  /// Support function of the base in E-coordinates.
  double base_support(const Eigen::VectorXd& w) const {
    switch (base_.index()) {
      case 0:
        return (std::get<polytope_base>(base_).vertices.transpose() * w).maxCoeff();
      case 1: {
        const auto& c = std::get<disk_base>(base_);
        return c.center.dot(w) + c.radius * w.norm();
      }
      default: {
        const auto& c = std::get<cap_base>(base_);
        auto one = [&](const Eigen::VectorXd& p) {
          const double along = w.dot(p);
          const double across = (w - along * p).norm();
          const double nw = w.norm();
          // Inside the cone of half-angle delta around p the sphere point wins.
          if (nw > 0.0 && along >= nw * cos_delta_) return nw;
          return along * cos_delta_ + across * std::sin(c.delta);
        };
        const double up = one(c.pole);
        return c.two_sided ? std::max(up, one(-c.pole)) : up;
      }
    }
  }

 private:
  frame e_;
  frame h_;
  cylinder_base base_;
  convex_hull hull_;
  Eigen::VectorXd pole_world_;
  double cos_delta_ = 0.0;
};

/// crv_K(C) = vol_{d-k}(B) / vol_{d-k}(P_E K).
inline estimate crv(const convex_body& k, const cylinder& c, const volume_options& opt = {}) {
  require(k.dim() == c.ambient_dim(), errc::dimension_mismatch, "cylinder and body dimensions differ");
  convex_body shadow;
  try {
    shadow = project_body(k, c.e());
  } catch (const error& e) {
    throw error(errc::degenerate_projection, e.what());
  }
  const estimate denom = volume(shadow, opt);
  require(denom.value > 1e-300, errc::degenerate_projection, "projected body has zero volume");
  return c.base_volume(opt) / denom;
}

namespace detail {

// Deterministic direction set in R^m: the circle evenly, otherwise axes plus
// a fixed pseudo-random sample.
inline Eigen::MatrixXd probe_directions(int m, int count) {
  if (m == 1) {
    Eigen::MatrixXd w(1, 2);
    w << 1.0, -1.0;
    return w;
  }
  Eigen::MatrixXd w(m, count);
  if (m == 2) {
    for (int j = 0; j < count; ++j) {
      const double t = 2.0 * std::numbers::pi * j / count;
      w(0, j) = std::cos(t);
      w(1, j) = std::sin(t);
    }
    return w;
  }
  rng gen(0xd1ec7u + static_cast<unsigned>(m));
  for (int j = 0; j < count; ++j) {
    w.col(j) = j < 2 * m ? Eigen::VectorXd(((j % 2) ? -1.0 : 1.0) * Eigen::VectorXd::Unit(m, j / 2))
                         : uniform_sphere(gen, m);
  }
  return w;
}

}  // namespace detail

/// B ⊆ P_E K up to tol. Polytope bases check their vertices exactly; disk and
/// cap bases compare support functions and probe boundary points on 1024
/// directions.
inline bool base_contained(const convex_body& k, const cylinder& c, double tol = 1e-9) {
  const convex_body shadow = project_body(k, c.e());
  const int m = c.e().dim();
  if (const auto* p = std::get_if<polytope_base>(&c.base())) {
    for (Eigen::Index j = 0; j < p->vertices.cols(); ++j) {
      if (!shadow.contains(p->vertices.col(j), -tol)) return false;
    }
    return true;
  }
  const Eigen::MatrixXd w = detail::probe_directions(m, 1024);
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    const Eigen::VectorXd u = w.col(j);
    if (c.base_support(u) > shadow.support(u) + tol) return false;
  }
  if (const auto* d = std::get_if<disk_base>(&c.base())) {
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      if (!shadow.contains(d->center + d->radius * w.col(j), -tol)) return false;
    }
    return true;
  }
  // Cap boundary: the spherical part and the rim circle at height cos delta.
  const auto& cap = std::get<cap_base>(c.base());
  const double cd = std::cos(cap.delta), sd = std::sin(cap.delta);
  for (double sign : {1.0, -1.0}) {
    if (sign < 0 && !cap.two_sided) break;
    const Eigen::VectorXd p = sign * cap.pole;
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      Eigen::VectorXd across = w.col(j) - w.col(j).dot(p) * p;
      const double n = across.norm();
      if (n < 1e-9) continue;
      across /= n;
      if (!shadow.contains(cd * p + sd * across, -tol)) return false;
    }
    if (!shadow.contains(p, -tol) || !shadow.contains(cd * p, -tol)) return false;
  }
  return true;
}

/// C̄ = C ∩ K with membership predicates and a rejection sampler over K.
class restricted_cylinder {
 public:
  restricted_cylinder(convex_body k, cylinder c) : k_(std::move(k)), c_(std::move(c)) {}

  bool contains(const Eigen::VectorXd& x) const { return k_.contains(x) && c_.contains(x); }
  bool contains_interior(const Eigen::VectorXd& x) const {
    return k_.contains(x, interior_margin) && c_.contains_interior(x);
  }

  Eigen::VectorXd sample(rng& gen, long max_misses = 100000) const {
    for (long i = 0; i < max_misses; ++i) {
      Eigen::VectorXd x = k_.sample(gen);
      if (c_.contains(x)) return x;
    }
    throw error(errc::empty_intersection, "no sample of K landed in the cylinder");
  }

  /// Fraction of K's volume inside C, estimated from n samples.
  estimate volume_fraction(rng& gen, long n) const {
    long hits = 0;
    for (long i = 0; i < n; ++i) {
      if (c_.contains(k_.sample(gen))) ++hits;
    }
    const double p = static_cast<double>(hits) / n;
    return {p, std::sqrt(std::max(p * (1 - p), 1.0 / n) / n)};
  }

  const convex_body& body() const { return k_; }
  const cylinder& cyl() const { return c_; }

 private:
  convex_body k_;
  cylinder c_;
};

inline restricted_cylinder restrict(const convex_body& k, const cylinder& c) { return {k, c}; }

/// Image of a polytope-based cylinder under x -> T x + t. The new complement
/// is T H, the new E is spanned by T^{-T} E, and the base maps by the
/// induced linear map on E-coordinates.
inline cylinder transform(const cylinder& c, const Eigen::MatrixXd& t, const Eigen::VectorXd& shift) {
  const auto* p = std::get_if<polytope_base>(&c.base());
  require(p != nullptr, errc::domain_error, "only polytope bases stay in their family under linear maps");
  const int d = c.ambient_dim();
  require(t.rows() == d && t.cols() == d && shift.size() == d, errc::dimension_mismatch, "map has wrong size");
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(t);
  require(lu.isInvertible(), errc::rank_deficient, "map is singular");
  const Eigen::MatrixXd tinv = lu.inverse();
  const frame e2 = orthonormalize(Eigen::MatrixXd(tinv.transpose() * c.e().columns()));
  // y' = E2^T y satisfies E^T T^{-1} y = M y' with M = E^T T^{-1} E2.
  const Eigen::MatrixXd m = c.e().columns().transpose() * tinv * e2.columns();
  const Eigen::MatrixXd verts =
      (m.inverse() * p->vertices).colwise() + e2.columns().transpose() * shift;
  return cylinder(e2, polytope_base{verts});
}

/// Image of a body under x -> T x + t (balls and ellipsoids become
/// ellipsoids, polytopes map vertexwise).
inline convex_body transform(const convex_body& k, const Eigen::MatrixXd& t, const Eigen::VectorXd& shift) {
  if (k.is_polytope()) return polytope((t * k.as_polytope().vertices()).colwise() + shift);
  const ellipsoid e = k.to_ellipsoid();
  return ellipsoid::from_map(t * e.center() + shift, t * e.root());
}

}  // namespace cylpack
