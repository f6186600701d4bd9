#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cylpack/core/errors.hpp"

namespace cylpack {

/// Orthonormal basis of a linear subspace E of R^d, stored as the columns of a
/// d x m matrix. Coordinates in E are always taken with respect to these columns.
class frame {
 public:
  frame() = default;

  /// Wraps columns that are already orthonormal (norm and pairwise inner
  /// products within `tol`).
  static frame from_columns(Eigen::MatrixXd columns, double tol = 1e-12) {
    require(columns.cols() >= 1 && columns.cols() <= columns.rows(), errc::dimension_mismatch,
            "frame needs 1 <= m <= d columns");
    const Eigen::MatrixXd gram = columns.transpose() * columns;
    const double dev = (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    require(dev <= tol, errc::rank_deficient,
            "frame columns are not orthonormal (Gram deviation " + std::to_string(dev) + ")");
    frame f;
    f.cols_ = std::move(columns);
    return f;
  }

  int ambient_dim() const { return static_cast<int>(cols_.rows()); }
  int dim() const { return static_cast<int>(cols_.cols()); }
  const Eigen::MatrixXd& columns() const { return cols_; }
  Eigen::VectorXd column(int i) const { return cols_.col(i); }

  Eigen::VectorXd coordinates(const Eigen::VectorXd& x) const {
    check_ambient(x);
    return cols_.transpose() * x;
  }
  Eigen::VectorXd embed(const Eigen::VectorXd& y) const {
    require(y.size() == dim(), errc::dimension_mismatch, "coordinate vector has wrong length");
    return cols_ * y;
  }
  Eigen::VectorXd project(const Eigen::VectorXd& x) const { return cols_ * coordinates(x); }

  double gram_deviation() const {
    const Eigen::MatrixXd gram = cols_.transpose() * cols_;
    return (gram - Eigen::MatrixXd::Identity(dim(), dim())).cwiseAbs().maxCoeff();
  }

 private:
  void check_ambient(const Eigen::VectorXd& x) const {
    require(x.size() == ambient_dim(), errc::dimension_mismatch,
            "vector of length " + std::to_string(x.size()) + " in R^" + std::to_string(ambient_dim()));
  }

  Eigen::MatrixXd cols_;
};

namespace detail {

// Modified Gram-Schmidt with one re-orthogonalization pass. Returns the
// residual norm of v against the first `count` columns of q.
inline double orthogonalize_against(Eigen::VectorXd& v, const Eigen::MatrixXd& q, int count) {
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < count; ++j) v -= q.col(j).dot(v) * q.col(j);
  }
  return v.norm();
}

}  // namespace detail

/// Gram-Schmidt: a frame spanning the same subspace whose first column is
/// parallel to the first input. Throws RankDeficient below the 1e-10 pivot.
inline frame orthonormalize(const Eigen::MatrixXd& vectors, double pivot = 1e-10) {
  const int d = static_cast<int>(vectors.rows());
  const int m = static_cast<int>(vectors.cols());
  require(m >= 1 && m <= d, errc::rank_deficient, "need between 1 and d vectors");
  Eigen::MatrixXd q(d, m);
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXd v = vectors.col(j);
    const double scale = v.norm();
    require(scale > 0.0, errc::rank_deficient, "zero vector");
    const double residual = detail::orthogonalize_against(v, q, j);
    require(residual > pivot * scale, errc::rank_deficient,
            "vector " + std::to_string(j) + " depends on its predecessors");
    q.col(j) = v / residual;
  }
  return frame::from_columns(std::move(q));
}

inline frame orthonormalize(const std::vector<Eigen::VectorXd>& vectors, double pivot = 1e-10) {
  require(!vectors.empty(), errc::rank_deficient, "no vectors");
  Eigen::MatrixXd m(vectors.front().size(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    require(vectors[j].size() == m.rows(), errc::dimension_mismatch, "vectors differ in length");
    m.col(static_cast<Eigen::Index>(j)) = vectors[j];
  }
  return orthonormalize(m, pivot);
}

/// Orthonormal basis of the orthogonal complement. Deterministic: standard
/// basis vectors are orthogonalized in order of largest residual.
inline frame complement(const frame& e) {
  const int d = e.ambient_dim();
  const int m = e.dim();
  require(m < d, errc::full_dimensional, "frame already spans R^" + std::to_string(d));
  Eigen::MatrixXd q(d, d);
  q.leftCols(m) = e.columns();
  int count = m;
  while (count < d) {
    int best = -1;
    double best_norm = 0.0;
    Eigen::VectorXd best_vec;
    for (int i = 0; i < d; ++i) {
      Eigen::VectorXd v = Eigen::VectorXd::Unit(d, i);
      const double r = detail::orthogonalize_against(v, q, count);
      if (r > best_norm + 1e-12) {
        best_norm = r;
        best = i;
        best_vec = v;
      }
    }
    require(best >= 0 && best_norm > 1e-8, errc::rank_deficient, "cannot complete basis");
    q.col(count++) = best_vec / best_norm;
  }
  return frame::from_columns(q.rightCols(d - m));
}

/// Frame spanned by the listed standard basis vectors.
inline frame coordinate_frame(int d, const std::vector<int>& axes) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(d, static_cast<Eigen::Index>(axes.size()));
  for (std::size_t j = 0; j < axes.size(); ++j) {
    require(axes[j] >= 0 && axes[j] < d, errc::dimension_mismatch, "axis out of range");
    q(axes[j], static_cast<Eigen::Index>(j)) = 1.0;
  }
  return frame::from_columns(std::move(q));
}

}  // namespace cylpack
