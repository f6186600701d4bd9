#pragma once

// Planar planks {x : a <= <x,u> <= b} inside a planar convex region, with an
// exact arrangement-based maximum of the open-interior multiplicity.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cylpack/convex_body.hpp"
#include "cylpack/core/errors.hpp"
#include "cylpack/core/random.hpp"
#include "cylpack/cylinder.hpp"
#include "cylpack/instances.hpp"

namespace cylpack {

struct plank2d {
  Eigen::Vector2d u;  // unit normal
  double a = 0.0, b = 0.0;
  double width() const { return b - a; }
};

inline plank2d make_plank2d(Eigen::Vector2d u, double a, double b) {
  require(b > a, errc::domain_error, "plank needs a < b");
  require(std::abs(u.norm() - 1.0) < 1e-12, errc::domain_error, "plank normal must be a unit vector");
  return {u, a, b};
}

inline cylinder to_cylinder(const plank2d& p) { return plank(Eigen::VectorXd(p.u), p.a, p.b); }

/// A planar convex region seen through three queries: support function,
/// closed membership and the chord cut by a line.
struct region2d {
  std::function<double(const Eigen::Vector2d&)> support;
  std::function<bool(const Eigen::Vector2d&)> contains;
  /// Parameter range [t0, t1] of {s u + t u_perp} inside the region, if any.
  std::function<std::optional<std::pair<double, double>>(const Eigen::Vector2d& u, double s)> chord;
  Eigen::Vector2d interior_point;
  double scale = 1.0;
};

inline Eigen::Vector2d perp(const Eigen::Vector2d& u) { return {-u(1), u(0)}; }

inline region2d region_of(const convex_body& k) {
  require(k.dim() == 2, errc::dimension_mismatch, "planar region expected");
  region2d r;
  r.support = [k](const Eigen::Vector2d& u) { return k.support(Eigen::VectorXd(u)); };
  r.contains = [k](const Eigen::Vector2d& x) { return k.contains(Eigen::VectorXd(x), -1e-12); };
  r.interior_point = k.center();
  r.scale = std::max(1e-300, (k.box_hi() - k.box_lo()).norm());
  if (k.is_polytope()) {
    const auto& h = k.as_polytope().hull();
    const Eigen::MatrixXd n = h.normal_matrix();
    const Eigen::VectorXd off = h.offsets();
    r.chord = [n, off](const Eigen::Vector2d& u, double s) -> std::optional<std::pair<double, double>> {
      const Eigen::Vector2d v = perp(u);
      double t0 = -INFINITY, t1 = INFINITY;
      for (Eigen::Index i = 0; i < n.rows(); ++i) {
        const double nv = n.row(i).dot(v);
        const double rhs = off(i) - s * n.row(i).dot(u);
        if (std::abs(nv) < 1e-15) {
          if (rhs < 0.0) return std::nullopt;
        } else if (nv > 0.0) {
          t1 = std::min(t1, rhs / nv);
        } else {
          t0 = std::max(t0, rhs / nv);
        }
      }
      if (!(t1 > t0)) return std::nullopt;
      return std::make_pair(t0, t1);
    };
  } else {
    const ellipsoid e = k.to_ellipsoid();
    r.chord = [e](const Eigen::Vector2d& u, double s) -> std::optional<std::pair<double, double>> {
      const Eigen::Vector2d v = perp(u);
      const Eigen::Vector2d p = s * u - Eigen::Vector2d(e.center());
      const Eigen::Matrix2d q = e.shape();
      const double qa = v.dot(q * v), qb = 2.0 * p.dot(q * v), qc = p.dot(q * p) - 1.0;
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc <= 0.0) return std::nullopt;
      const double sq = std::sqrt(disc);
      return std::make_pair((-qb - sq) / (2 * qa), (-qb + sq) / (2 * qa));
    };
  }
  return r;
}

/// Planks inside the shadow of the region: a >= -h(-u) and b <= h(u).
inline bool plank_in_shadow(const region2d& k, const plank2d& p, double tol = 1e-9) {
  return p.a >= -k.support(-p.u) - tol && p.b <= k.support(p.u) + tol;
}

inline int open_multiplicity(const std::vector<plank2d>& planks, const Eigen::Vector2d& x) {
  int count = 0;
  for (const auto& p : planks) {
    const double t = p.u.dot(x);
    if (t > p.a + interior_margin && t < p.b - interior_margin) ++count;
  }
  return count;
}

inline int closed_multiplicity(const std::vector<plank2d>& planks, const Eigen::Vector2d& x) {
  int count = 0;
  for (const auto& p : planks) {
    const double t = p.u.dot(x);
    if (t >= p.a - interior_margin && t <= p.b + interior_margin) ++count;
  }
  return count;
}

struct plank_multiplicity {
  int max_mult = 0;  // open planks
  Eigen::Vector2d witness = Eigen::Vector2d::Zero();
  int min_cover = 0;  // closed planks
  Eigen::Vector2d witness_min = Eigen::Vector2d::Zero();
  long candidates = 0;
};

/// Maximum over int K of the number of open planks containing a point. The
/// multiplicity is constant on the open cells of the arrangement of all
/// plank boundary lines; every cell meeting int K has on its boundary a
/// piece of some line inside K, ending either at an arrangement vertex or on
/// the boundary of K, so probing next to those endpoints on every side
/// visits all cells. A closed count on a cell boundary is at least the count
/// in the adjacent cells, so the minimum closed coverage is also seen there.
inline plank_multiplicity exact_max_multiplicity(const region2d& k, const std::vector<plank2d>& planks) {
  struct line {
    Eigen::Vector2d u;
    double s;
  };
  std::vector<line> lines;
  for (const auto& p : planks) {
    lines.push_back({p.u, p.a});
    lines.push_back({p.u, p.b});
  }
  plank_multiplicity out;
  out.min_cover = std::numeric_limits<int>::max();
  const double eps_along = 1e-7 * k.scale;
  const double eps_off = 1e-9 * k.scale;
  auto probe = [&](const Eigen::Vector2d& x) {
    ++out.candidates;
    if (!k.contains(x)) return;
    const int m = open_multiplicity(planks, x);
    if (m > out.max_mult) {
      out.max_mult = m;
      out.witness = x;
    }
    const int c = closed_multiplicity(planks, x);
    if (c < out.min_cover) {
      out.min_cover = c;
      out.witness_min = x;
    }
  };
  probe(k.interior_point);
  for (const auto& l : lines) {
    const auto ch = k.chord(l.u, l.s);
    if (!ch) continue;
    const Eigen::Vector2d v = perp(l.u);
    const double len = ch->second - ch->first;
    const double step = std::min(eps_along, 0.25 * len);
    for (double t : {ch->first + step, ch->second - step}) {
      for (double side : {-1.0, 1.0}) probe(l.s * l.u + t * v + side * eps_off * l.u);
    }
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      Eigen::Matrix2d a;
      a.row(0) = lines[i].u.transpose();
      a.row(1) = lines[j].u.transpose();
      const double det = a.determinant();
      if (std::abs(det) < 1e-12) continue;
      const Eigen::Vector2d vtx = a.inverse() * Eigen::Vector2d(lines[i].s, lines[j].s);
      if (!k.contains(vtx)) continue;
      for (double si : {-1.0, 1.0}) {
        for (double sj : {-1.0, 1.0}) {
          probe(vtx + a.inverse() * Eigen::Vector2d(si * eps_off * 100, sj * eps_off * 100));
        }
      }
    }
  }
  return out;
}

/// Uniform samples of the region by rejection from its bounding box.
inline Eigen::Vector2d sample_region(const region2d& k, rng& gen) {
  const double x0 = -k.support({-1, 0}), x1 = k.support({1, 0});
  const double y0 = -k.support({0, -1}), y1 = k.support({0, 1});
  for (long tries = 0; tries < 10000000; ++tries) {
    const Eigen::Vector2d x(uniform(gen, x0, x1), uniform(gen, y0, y1));
    if (k.contains(x)) return x;
  }
  throw error(errc::sampling_failure, "rejection sampling of the region failed");
}

inline int sampled_max_multiplicity(const region2d& k, const std::vector<plank2d>& planks, long n,
                                    std::uint64_t seed) {
  rng gen(seed);
  int best = 0;
  for (long i = 0; i < n; ++i) best = std::max(best, open_multiplicity(planks, sample_region(k, gen)));
  return best;
}

/// n parallel planks normal to u tiling the width of the region, r times.
inline std::vector<plank2d> plank_partition_2d(const region2d& k, const Eigen::Vector2d& u, int n, int r,
                                               std::uint64_t seed = 0) {
  require(n >= 1 && r >= 1, errc::domain_error, "partition needs n >= 1 and r >= 1");
  const Eigen::Vector2d v = u.normalized();
  const double lo = -k.support(-v), hi = k.support(v);
  std::vector<double> cuts{lo, hi};
  rng gen(seed);
  for (int i = 1; i < n; ++i) cuts.push_back(seed == 0 ? lo + (hi - lo) * i / n : uniform(gen, lo, hi));
  std::sort(cuts.begin(), cuts.end());
  std::vector<plank2d> out;
  for (int rep = 0; rep < r; ++rep) {
    for (int i = 0; i < n; ++i) {
      if (cuts[i + 1] > cuts[i]) out.push_back({v, cuts[i], cuts[i + 1]});
    }
  }
  return out;
}

/// Greedy random r-fold packing: proposals in random directions with random
/// positions inside the shadow, kept when the exact maximum multiplicity
/// stays at most r.
inline std::vector<plank2d> random_plank_packing_2d(const region2d& k, int r, int proposals, std::uint64_t seed,
                                                    int target = 0) {
  rng gen(seed);
  std::vector<plank2d> out;
  for (int i = 0; i < proposals; ++i) {
    if (target > 0 && static_cast<int>(out.size()) >= target) break;
    const double ang = uniform(gen, 0.0, 2.0 * std::numbers::pi);
    const Eigen::Vector2d u(std::cos(ang), std::sin(ang));
    const double lo = -k.support(-u), hi = k.support(u);
    const double w = (hi - lo) * std::pow(uniform01(gen), 2.0) * 0.6;
    if (w <= 1e-9 * (hi - lo)) continue;
    const double a = uniform(gen, lo, hi - w);
    out.push_back({u, a, a + w});
    if (exact_max_multiplicity(k, out).max_mult > r) out.pop_back();
  }
  return out;
}

}  // namespace cylpack
