#pragma once

// Incremental (beneath-beyond) convex hull in R^d with simplicial facets.
// Coplanar facets are allowed; the triangulated boundary still yields exact
// volumes, areas and facet inequalities.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cylpack/core/errors.hpp"

namespace cylpack {

struct hull_facet {
  std::vector<int> vertices;  // indices into the point matrix, size d
  Eigen::VectorXd normal;     // outward unit normal
  double offset = 0.0;        // normal . x <= offset on the hull
};

class convex_hull {
 public:
  convex_hull() = default;

  /// points: d x n. Throws DegenerateBody when the points do not span R^d.
  explicit convex_hull(Eigen::MatrixXd points, double rel_eps = 1e-10) : points_(std::move(points)) {
    const int d = dim();
    const int n = static_cast<int>(points_.cols());
    require(d >= 1, errc::dimension_mismatch, "hull needs d >= 1");
    require(n >= d + 1, errc::degenerate_body,
            "hull in R^" + std::to_string(d) + " needs at least d+1 points, got " + std::to_string(n));
    double scale = 0.0;
    for (int j = 0; j < n; ++j) scale = std::max(scale, (points_.col(j) - points_.col(0)).norm());
    require(scale > 0.0, errc::degenerate_body, "all points coincide");
    eps_ = rel_eps * scale;
    if (d == 1) {
      build_1d();
    } else {
      build();
    }
    pack_inequalities();
  }

  int dim() const { return static_cast<int>(points_.rows()); }
  const Eigen::MatrixXd& points() const { return points_; }
  const std::vector<hull_facet>& facets() const { return facets_; }
  const Eigen::VectorXd& interior_point() const { return interior_; }
  double epsilon() const { return eps_; }

  /// Indices of points that are vertices of some facet.
  std::vector<int> vertex_indices() const {
    std::vector<int> out;
    for (const auto& f : facets_) out.insert(out.end(), f.vertices.begin(), f.vertices.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  Eigen::MatrixXd vertices() const {
    const auto idx = vertex_indices();
    Eigen::MatrixXd v(dim(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) v.col(static_cast<Eigen::Index>(j)) = points_.col(idx[j]);
    return v;
  }

  /// Exact d-volume: sum of simplices joining the interior point to each facet.
  double volume() const {
    const int d = dim();
    if (d == 1) return facets_[0].offset + facets_[1].offset;
    double total = 0.0;
    Eigen::MatrixXd m(d, d);
    for (const auto& f : facets_) {
      for (int i = 0; i < d; ++i) m.col(i) = points_.col(f.vertices[i]) - interior_;
      total += std::abs(m.determinant());
    }
    return total / std::tgamma(d + 1.0);
  }

  /// (d-1)-volume of one simplicial facet.
  double facet_area(const hull_facet& f) const {
    const int d = dim();
    if (d == 1) return 1.0;
    Eigen::MatrixXd g(d, d - 1);
    for (int i = 1; i < d; ++i) g.col(i - 1) = points_.col(f.vertices[i]) - points_.col(f.vertices[0]);
    const double det = (g.transpose() * g).determinant();
    return std::sqrt(std::max(0.0, det)) / std::tgamma(static_cast<double>(d));
  }

  double surface_area() const {
    double s = 0.0;
    for (const auto& f : facets_) s += facet_area(f);
    return s;
  }

  /// Signed margin: positive inside, measured as min over facets of offset - n.x.
  double depth(const Eigen::VectorXd& x) const { return (offsets_ - normals_ * x).minCoeff(); }

  /// Membership with a margin: margin > 0 demands strict interior, margin < 0 tolerance.
  bool contains(const Eigen::VectorXd& x, double margin = 0.0) const { return depth(x) >= margin; }

  const Eigen::MatrixXd& normal_matrix() const { return normals_; }
  const Eigen::VectorXd& offsets() const { return offsets_; }

  /// Counter-clockwise vertex cycle of a planar hull.
  std::vector<int> polygon_cycle() const {
    require(dim() == 2, errc::dimension_mismatch, "polygon cycle needs d = 2");
    std::map<int, int> next;
    for (const auto& f : facets_) {
      // Edge (p, q) with outward normal n is counter-clockwise iff cross(q - p, n) < 0.
      const int a = f.vertices[0];
      const int b = f.vertices[1];
      const Eigen::Vector2d e = points_.col(b) - points_.col(a);
      const double cross = e.x() * f.normal.y() - e.y() * f.normal.x();
      if (cross < 0) {
        next[a] = b;
      } else {
        next[b] = a;
      }
    }
    std::vector<int> cycle;
    if (next.empty()) return cycle;
    const int start = next.begin()->first;
    int cur = start;
    do {
      cycle.push_back(cur);
      auto it = next.find(cur);
      if (it == next.end()) break;
      cur = it->second;
    } while (cur != start && cycle.size() <= next.size());
    return cycle;
  }

 private:
  void build_1d() {
    Eigen::Index lo = 0, hi = 0;
    points_.row(0).minCoeff(&lo);
    points_.row(0).maxCoeff(&hi);
    const double a = points_(0, lo), b = points_(0, hi);
    require(b - a > eps_, errc::degenerate_body, "segment has zero length");
    interior_ = Eigen::VectorXd::Constant(1, 0.5 * (a + b));
    facets_.push_back({{static_cast<int>(hi)}, Eigen::VectorXd::Constant(1, 1.0), b});
    facets_.push_back({{static_cast<int>(lo)}, Eigen::VectorXd::Constant(1, -1.0), -a});
  }

  bool make_facet(std::vector<int> verts, hull_facet& out) const {
    const int d = dim();
    Eigen::MatrixXd a(d - 1, d);
    for (int i = 1; i < d; ++i) a.row(i - 1) = (points_.col(verts[i]) - points_.col(verts[0])).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    Eigen::VectorXd n = svd.matrixV().col(d - 1);
    n.normalize();
    double off = n.dot(points_.col(verts[0]));
    if (n.dot(interior_) > off) {
      n = -n;
      off = -off;
    }
    if (off - n.dot(interior_) <= 0.0) return false;
    out.vertices = std::move(verts);
    out.normal = std::move(n);
    out.offset = off;
    return true;
  }

  void build() {
    const int d = dim();
    const int n = static_cast<int>(points_.cols());

    // Initial simplex: greedily add the point farthest from the current affine hull.
    std::vector<int> simplex;
    {
      Eigen::Index first = 0;
      points_.row(0).minCoeff(&first);
      simplex.push_back(static_cast<int>(first));
      Eigen::MatrixXd basis(d, d);
      int rank = 0;
      for (int step = 0; step < d; ++step) {
        int best = -1;
        double best_dist = 0.0;
        Eigen::VectorXd best_res;
        for (int j = 0; j < n; ++j) {
          Eigen::VectorXd v = points_.col(j) - points_.col(simplex[0]);
          for (int pass = 0; pass < 2; ++pass) {
            for (int b = 0; b < rank; ++b) v -= basis.col(b).dot(v) * basis.col(b);
          }
          const double dist = v.norm();
          if (dist > best_dist) {
            best_dist = dist;
            best = j;
            best_res = v;
          }
        }
        require(best >= 0 && best_dist > eps_, errc::degenerate_body,
                "points lie in a lower-dimensional affine subspace");
        basis.col(rank++) = best_res / best_dist;
        simplex.push_back(best);
      }
    }
    interior_ = Eigen::VectorXd::Zero(d);
    for (int idx : simplex) interior_ += points_.col(idx);
    interior_ /= (d + 1);

    std::vector<hull_facet> facets;
    for (int skip = 0; skip <= d; ++skip) {
      std::vector<int> verts;
      for (int i = 0; i <= d; ++i) {
        if (i != skip) verts.push_back(simplex[i]);
      }
      hull_facet f;
      require(make_facet(std::move(verts), f), errc::degenerate_body, "degenerate initial simplex");
      facets.push_back(std::move(f));
    }

    std::vector<bool> used(n, false);
    for (int idx : simplex) used[idx] = true;

    for (int p = 0; p < n; ++p) {
      if (used[p]) continue;
      const Eigen::VectorXd x = points_.col(p);
      std::vector<std::size_t> visible;
      for (std::size_t f = 0; f < facets.size(); ++f) {
        if (facets[f].normal.dot(x) - facets[f].offset > eps_) visible.push_back(f);
      }
      if (visible.empty()) continue;

      std::map<std::vector<int>, int> ridge_count;
      for (std::size_t f : visible) {
        const auto& verts = facets[f].vertices;
        for (int skip = 0; skip < d; ++skip) {
          std::vector<int> ridge;
          ridge.reserve(d - 1);
          for (int i = 0; i < d; ++i) {
            if (i != skip) ridge.push_back(verts[i]);
          }
          std::sort(ridge.begin(), ridge.end());
          ++ridge_count[ridge];
        }
      }
      std::vector<hull_facet> next;
      next.reserve(facets.size());
      std::vector<bool> is_visible(facets.size(), false);
      for (std::size_t f : visible) is_visible[f] = true;
      for (std::size_t f = 0; f < facets.size(); ++f) {
        if (!is_visible[f]) next.push_back(std::move(facets[f]));
      }
      for (const auto& [ridge, count] : ridge_count) {
        if (count != 1) continue;
        std::vector<int> verts = ridge;
        verts.push_back(p);
        hull_facet f;
        if (make_facet(std::move(verts), f)) next.push_back(std::move(f));
      }
      facets = std::move(next);
      used[p] = true;
    }
    facets_ = std::move(facets);
  }

  void pack_inequalities() {
    const int d = dim();
    normals_.resize(static_cast<Eigen::Index>(facets_.size()), d);
    offsets_.resize(static_cast<Eigen::Index>(facets_.size()));
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      normals_.row(static_cast<Eigen::Index>(f)) = facets_[f].normal.transpose();
      offsets_(static_cast<Eigen::Index>(f)) = facets_[f].offset;
    }
  }

  Eigen::MatrixXd points_;
  std::vector<hull_facet> facets_;
  Eigen::VectorXd interior_;
  Eigen::MatrixXd normals_;
  Eigen::VectorXd offsets_;
  double eps_ = 0.0;
};

}  // namespace cylpack
