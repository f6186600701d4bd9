#pragma once

// Families of closed disks in the plane that no line splits (NS-families),
// their hulls, NS-diameter and circumradius, the chord density built from
// the disks, and the plank-width bounds that go with them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cylpack/core/errors.hpp"
#include "cylpack/core/random.hpp"
#include "cylpack/plank2d.hpp"
#include "cylpack/report.hpp"

namespace cylpack {

struct disk {
  Eigen::Vector2d center;
  double radius = 0.0;
};

using disk_family = std::vector<disk>;

inline void check_family(const disk_family& f) {
  require(!f.empty(), errc::domain_error, "disk family is empty");
  for (const auto& d : f) require(d.radius > 0.0, errc::domain_error, "disk radius must be positive");
}

/// h_K(u) for K the hull of the disks.
inline double family_support(const disk_family& f, const Eigen::Vector2d& u) {
  double h = -INFINITY;
  for (const auto& d : f) h = std::max(h, d.center.dot(u) + d.radius * u.norm());
  return h;
}

/// x lies in the hull iff every direction w has some disk with
/// <c_i - x, w> + r_i >= 0. Disk i covers an arc of directions centred on
/// c_i - x of half-width pi/2 + asin(r_i / |c_i - x|); x is inside iff the
/// arcs cover the circle.
inline bool family_hull_contains(const disk_family& f, const Eigen::Vector2d& x, double tol = 1e-12) {
  const double pi = std::numbers::pi;
  std::vector<std::pair<double, double>> arcs;
  for (const auto& d : f) {
    const Eigen::Vector2d g = d.center - x;
    const double dist = g.norm();
    if (dist <= d.radius + tol) return true;
    const double half = pi / 2 + std::asin(std::min(1.0, d.radius / dist)) + tol;
    double lo = std::atan2(g(1), g(0)) - half;
    lo = std::fmod(lo + 4 * pi, 2 * pi);
    arcs.emplace_back(lo, lo + 2 * half);
  }
  // Sweep the arcs on [0, 2 pi), unrolling those that wrap past 2 pi.
  std::vector<std::pair<double, double>> pieces;
  for (const auto& [lo, hi] : arcs) {
    if (hi <= 2 * pi) {
      pieces.emplace_back(lo, hi);
    } else {
      pieces.emplace_back(lo, 2 * pi);
      pieces.emplace_back(0.0, hi - 2 * pi);
    }
  }
  std::sort(pieces.begin(), pieces.end());
  double reach = 0.0;
  for (const auto& [lo, hi] : pieces) {
    if (lo > reach) return false;
    reach = std::max(reach, hi);
  }
  return reach >= 2 * pi;
}

inline region2d region_of(const disk_family& f) {
  check_family(f);
  region2d r;
  r.support = [f](const Eigen::Vector2d& u) { return family_support(f, u); };
  r.contains = [f](const Eigen::Vector2d& x) { return family_hull_contains(f, x); };
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& d : f) {
    c += d.center;
    lo = std::min({lo, d.center(0) - d.radius, d.center(1) - d.radius});
    hi = std::max({hi, d.center(0) + d.radius, d.center(1) + d.radius});
  }
  r.interior_point = c / static_cast<double>(f.size());
  r.scale = (hi - lo) * std::sqrt(2.0);
  const double bound = r.scale + r.interior_point.norm() + 1.0;
  r.chord = [f, bound](const Eigen::Vector2d& u, double s) -> std::optional<std::pair<double, double>> {
    if (!(s < family_support(f, u) && s > -family_support(f, -u))) return std::nullopt;
    const Eigen::Vector2d v = perp(u);
    // A point of the line in the hull: one inside a crossed disk, or else
    // where the line cuts a segment between centres on opposite sides.
    std::optional<double> seed;
    for (const auto& d : f) {
      if (std::abs(d.center.dot(u) - s) <= d.radius) {
        seed = d.center.dot(v);
        break;
      }
    }
    for (std::size_t i = 0; i < f.size() && !seed; ++i) {
      for (std::size_t j = i + 1; j < f.size() && !seed; ++j) {
        const double si = f[i].center.dot(u) - s, sj = f[j].center.dot(u) - s;
        if (si * sj < 0.0) {
          const Eigen::Vector2d p = f[i].center + si / (si - sj) * (f[j].center - f[i].center);
          seed = p.dot(v);
        }
      }
    }
    if (!seed) return std::nullopt;
    auto inside = [&](double t) { return family_hull_contains(f, s * u + t * v); };
    auto edge = [&](double sign) {
      double in = *seed, out = *seed + sign * bound;
      for (int it = 0; it < 100 && std::abs(out - in) > 1e-15 * bound; ++it) {
        const double mid = 0.5 * (in + out);
        (inside(mid) ? in : out) = mid;
      }
      return in;
    };
    const double t0 = edge(-1.0), t1 = edge(1.0);
    if (!(t1 > t0)) return std::nullopt;
    return std::make_pair(t0, t1);
  };
  return r;
}

inline double ns_diameter(const disk_family& f) {
  double s = 0.0;
  for (const auto& d : f) s += 2.0 * d.radius;
  return s;
}

struct separation_result {
  bool separable = false;
  Eigen::Vector2d u = Eigen::Vector2d::Zero();  // separating line <x,u> = s
  double s = 0.0;
  int directions_tested = 0;
};

/// Largest gap between the projected disks in direction u that splits the
/// family into two nonempty groups; negative when there is none.
inline double split_gap(const disk_family& f, const Eigen::Vector2d& u, double& where) {
  std::vector<std::pair<double, double>> iv;
  for (const auto& d : f) iv.emplace_back(d.center.dot(u) - d.radius, d.center.dot(u) + d.radius);
  std::sort(iv.begin(), iv.end());
  double reach = iv.front().second, best = -INFINITY;
  for (std::size_t i = 1; i < iv.size(); ++i) {
    const double gap = iv[i].first - reach;
    if (gap > best) {
      best = gap;
      where = reach + 0.5 * gap;
    }
    reach = std::max(reach, iv[i].second);
  }
  return best;
}

/// Exact decision. The order relations <c_j - c_i, u> vs +-(r_i + r_j) and
/// +-(r_i - r_j) change only at finitely many critical angles, so one
/// direction per open cell between them (plus the critical angles) decides.
inline separation_result is_separable(const disk_family& f) {
  check_family(f);
  separation_result out;
  if (f.size() < 2) return out;
  const double pi = std::numbers::pi;
  std::vector<double> crit{0.0};
  double scale = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    scale = std::max(scale, f[i].center.norm() + f[i].radius);
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      const Eigen::Vector2d dc = f[j].center - f[i].center;
      const double rho = dc.norm();
      if (rho == 0.0) continue;
      const double phi = std::atan2(dc(1), dc(0));
      for (double val : {f[i].radius + f[j].radius, -(f[i].radius + f[j].radius), f[i].radius - f[j].radius,
                         f[j].radius - f[i].radius}) {
        if (std::abs(val) > rho) continue;
        const double a = std::acos(val / rho);
        for (double th : {phi + a, phi - a}) crit.push_back(std::fmod(std::fmod(th, pi) + pi, pi));
      }
    }
  }
  std::sort(crit.begin(), crit.end());
  std::vector<double> tests;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    const double next = i + 1 < crit.size() ? crit[i + 1] : crit.front() + pi;
    tests.push_back(crit[i]);
    tests.push_back(0.5 * (crit[i] + next));
  }
  const double tol = 1e-12 * std::max(1.0, scale);
  double best = -INFINITY;
  for (double th : tests) {
    const Eigen::Vector2d u(std::cos(th), std::sin(th));
    double where = 0.0;
    const double gap = split_gap(f, u, where);
    ++out.directions_tested;
    if (gap > best) {
      best = gap;
      out.u = u;
      out.s = where;
    }
  }
  out.separable = best > tol;
  return out;
}

struct enclosing_circle {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 0.0;
  std::vector<int> support;  // disks internally tangent to the circle
  double residual = 0.0;     // max tangency defect over the support disks
};

namespace detail {

inline bool encloses(const disk_family& f, const Eigen::Vector2d& c, double r, double tol) {
  for (const auto& d : f) {
    if ((d.center - c).norm() + d.radius > r + tol) return false;
  }
  return true;
}

/// Circles internally tangent to three disks: |c - c_i| = R - r_i.
inline std::vector<std::pair<Eigen::Vector2d, double>> tangent_circles(const disk& a, const disk& b, const disk& c) {
  std::vector<std::pair<Eigen::Vector2d, double>> out;
  Eigen::Matrix2d m;
  m.row(0) = 2.0 * (b.center - a.center).transpose();
  m.row(1) = 2.0 * (c.center - a.center).transpose();
  if (std::abs(m.determinant()) < 1e-14) return out;
  const Eigen::Vector2d rhs(b.center.squaredNorm() - a.center.squaredNorm() - b.radius * b.radius + a.radius * a.radius,
                            c.center.squaredNorm() - a.center.squaredNorm() - c.radius * c.radius + a.radius * a.radius);
  const Eigen::Vector2d g(2.0 * (b.radius - a.radius), 2.0 * (c.radius - a.radius));
  const Eigen::Matrix2d mi = m.inverse();
  const Eigen::Vector2d p = mi * rhs, q = mi * g;  // centre = p + R q
  const Eigen::Vector2d w = p - a.center;
  const double qa = q.squaredNorm() - 1.0, qb = 2.0 * (w.dot(q) + a.radius), qc = w.squaredNorm() - a.radius * a.radius;
  std::vector<double> roots;
  if (std::abs(qa) < 1e-14) {
    if (std::abs(qb) > 0.0) roots.push_back(-qc / qb);
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      roots.push_back((-qb - sq) / (2 * qa));
      roots.push_back((-qb + sq) / (2 * qa));
    }
  }
  for (double r : roots) {
    if (r >= std::max({a.radius, b.radius, c.radius})) out.emplace_back(p + r * q, r);
  }
  return out;
}

}  // namespace detail

/// Smallest disk containing every disk of the family, by enumerating
/// support sets of one, two and three internally tangent disks.
inline enclosing_circle circumradius(const disk_family& f) {
  check_family(f);
  const int n = static_cast<int>(f.size());
  double scale = 1.0;
  for (const auto& d : f) scale = std::max(scale, d.center.norm() + d.radius);
  const double tol = 1e-10 * scale;
  enclosing_circle best;
  best.radius = INFINITY;
  auto consider = [&](const Eigen::Vector2d& c, double r, std::vector<int> sup) {
    if (r < best.radius && detail::encloses(f, c, r, tol)) {
      best.center = c;
      best.radius = r;
      best.support = std::move(sup);
    }
  };
  for (int i = 0; i < n; ++i) consider(f[i].center, f[i].radius, {i});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Eigen::Vector2d dc = f[j].center - f[i].center;
      const double dist = dc.norm();
      if (dist == 0.0) continue;
      const double r = 0.5 * (dist + f[i].radius + f[j].radius);
      consider(f[i].center + (r - f[i].radius) / dist * dc, r, {i, j});
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int l = j + 1; l < n; ++l) {
        for (const auto& [c, r] : detail::tangent_circles(f[i], f[j], f[l])) consider(c, r, {i, j, l});
      }
    }
  }
  for (int i : best.support) {
    best.residual = std::max(best.residual, std::abs((f[i].center - best.center).norm() + f[i].radius - best.radius));
  }
  return best;
}

enum class density_mode { normalized, per_radius };

inline const char* to_string(density_mode m) { return m == density_mode::normalized ? "normalized" : "per_radius"; }

/// Integral over the line <x,u> = s of f = sum_j f_j, where f_j is
/// (1/pi)(r_j^2 - |x - c_j|^2)^{-1/2} in the normalized mode and carries an
/// extra factor 1/r_j in the per-radius mode. A full chord of disk j contributes
/// 1 (normalized) or 1/r_j (per radius).
inline double sectional_integral(const disk_family& f, density_mode mode, double s, const Eigen::Vector2d& u) {
  check_family(f);
  const Eigen::Vector2d v = u.normalized();
  require(s < family_support(f, v) && s > -family_support(f, -v), errc::line_misses_body,
          "line misses the interior of the hull");
  double total = 0.0;
  for (const auto& d : f) {
    if (std::abs(d.center.dot(v) - s) < d.radius) total += mode == density_mode::normalized ? 1.0 : 1.0 / d.radius;
  }
  return total;
}

/// The same chord contribution of one disk by quadrature, with t = a sin(theta).
inline double chord_integral_quadrature(const disk& d, density_mode mode, double s, const Eigen::Vector2d& u) {
  const double off = d.center.dot(u.normalized()) - s;
  if (std::abs(off) >= d.radius) return 0.0;
  const double a = std::sqrt(d.radius * d.radius - off * off);
  auto integrand = [&](double th) {
    const double t = a * std::sin(th);
    const double gap = (a - t) * (a + t);
    if (gap <= 0.0) return 1.0 / std::numbers::pi;
    return a * std::cos(th) / std::sqrt(gap) / std::numbers::pi;
  };
  const double h = std::numbers::pi / 2;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, -h, h, 10, 1e-14);
  return mode == density_mode::normalized ? v : v / d.radius;
}

/// Total mass of f: 2 r_j per disk (normalized) or 2 per disk (per radius).
inline double total_mass(const disk_family& f, density_mode mode = density_mode::normalized) {
  check_family(f);
  return mode == density_mode::normalized ? ns_diameter(f) : 2.0 * static_cast<double>(f.size());
}

/// Total mass by polar quadrature, rho = r sin(theta).
inline double total_mass_quadrature(const disk_family& f, density_mode mode = density_mode::normalized) {
  double total = 0.0;
  for (const auto& d : f) {
    const double r = d.radius;
    // integral of 2 pi rho (1/pi)(r^2 - rho^2)^{-1/2} d rho with rho = r sin(theta)
    auto integrand = [&](double th) { return 2.0 * r * std::sin(th); };
    const double v =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, std::numbers::pi / 2, 10, 1e-14);
    total += mode == density_mode::normalized ? v : v / r;
  }
  return total;
}

struct dual_falconer_result {
  bound_report widths;        // sum of widths <= r diam_NS
  bound_report circumradius;  // 2 R_K <= diam_NS
  plank_multiplicity multiplicity;
};

/// Planks must form an r-fold packing in the hull of a non-separable family.
inline dual_falconer_result verify_dual_falconer(const disk_family& f, const std::vector<plank2d>& planks, int r) {
  check_family(f);
  require(r >= 1, errc::domain_error, "r must be positive");
  require(!is_separable(f).separable, errc::not_ns, "disk family is separable");
  const region2d k = region_of(f);
  for (const auto& p : planks) require(plank_in_shadow(k, p), errc::not_a_packing, "plank leaves the shadow of K");
  dual_falconer_result out;
  out.multiplicity = exact_max_multiplicity(k, planks);
  require(out.multiplicity.max_mult <= r, errc::not_a_packing,
          "planks exceed multiplicity " + std::to_string(r) + " inside K");
  double sum = 0.0;
  for (const auto& p : planks) sum += p.width();
  const double diam = ns_diameter(f);
  const enclosing_circle c = circumradius(f);
  out.widths = make_report("dual_falconer", sum, r * diam, relation::le);
  out.widths.extras = {{"r", r}, {"ns_diameter", diam}, {"max_multiplicity", out.multiplicity.max_mult}};
  out.circumradius = make_report("ns_circumradius", 2.0 * c.radius, diam, relation::le);
  out.circumradius.extras = {{"circumradius", c.radius}, {"residual", c.residual}};
  return out;
}

/// The ridge functions g_i = (1/r) 1_[a_i, b_i] sum to at most 1 on K (checked
/// on samples); then (1/r) sum of widths <= total mass of the disk density.
inline bound_report ridge_bound_check(const disk_family& f, const std::vector<plank2d>& planks, int r, long samples,
                                      std::uint64_t seed) {
  check_family(f);
  require(r >= 1, errc::domain_error, "r must be positive");
  const region2d k = region_of(f);
  rng gen(seed);
  for (long i = 0; i < samples; ++i) {
    const Eigen::Vector2d x = sample_region(k, gen);
    const int m = open_multiplicity(planks, x);
    if (m > r) {
      throw error(errc::pointwise_violated, "ridge sum exceeds 1 at (" + std::to_string(x(0)) + ", " +
                                                std::to_string(x(1)) + ")");
    }
  }
  double sum = 0.0;
  for (const auto& p : planks) sum += p.width();
  bound_report rep = make_report("ridge_estimate", sum / r, total_mass(f), relation::le);
  rep.extras = {{"samples", static_cast<double>(samples)}};
  return rep;
}

/// total mass >= 2 R_K, with diam_NS recorded: 2 R_K <= m <= diam_NS.
inline bound_report inf_estimate_check(const disk_family& f) {
  const enclosing_circle c = circumradius(f);
  const double mass = total_mass(f);
  bound_report rep = make_report("inf_estimate", mass, 2.0 * c.radius, relation::ge);
  rep.extras = {{"circumradius", c.radius}, {"ns_diameter", ns_diameter(f)}};
  return rep;
}

struct variational_result {
  double value = 0.0;       // sqrt(2 M Delta)
  double support = 0.0;     // A = sqrt(2 M / Delta)
  double grid_value = 0.0;  // discretized minimum
  double grid_support = 0.0;
  double relative_gap = 0.0;
};

/// inf { int_0^A F : F >= Delta on [0, A], int t F >= M } = sqrt(2 M Delta).
/// The discretized problem fixes A on a grid; for fixed A the cheapest way
/// to meet the moment constraint puts any excess mass in the last cell.
inline variational_result variational_inf(double m, double delta, int cells = 20000) {
  require(m > 0.0 && delta > 0.0, errc::domain_error, "need M > 0 and Delta > 0");
  variational_result out;
  out.value = std::sqrt(2.0 * m * delta);
  out.support = std::sqrt(2.0 * m / delta);
  const double amax = 3.0 * out.support;
  const double h = amax / cells;
  out.grid_value = INFINITY;
  double moment = 0.0;
  for (int j = 1; j <= cells; ++j) {
    const double tmid = (j - 0.5) * h;
    moment += delta * tmid * h;
    const double excess = std::max(0.0, m - moment) / tmid;
    const double cost = delta * j * h + excess;
    if (cost < out.grid_value) {
      out.grid_value = cost;
      out.grid_support = j * h;
    }
  }
  out.relative_gap = std::abs(out.grid_value - out.value) / out.value;
  return out;
}

/// Rejection loop over chains of randomly placed disks until the family is
/// non-separable.
inline disk_family random_ns_family(int n, std::uint64_t seed, int max_attempts = 10000) {
  require(n >= 1, errc::domain_error, "need at least one disk");
  rng gen(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    disk_family f;
    f.push_back({Eigen::Vector2d::Zero(), uniform(gen, 0.3, 1.2)});
    while (static_cast<int>(f.size()) < n) {
      const auto& base = f[static_cast<std::size_t>(uniform01(gen) * f.size())];
      const double r = uniform(gen, 0.2, 1.2);
      const double ang = uniform(gen, 0.0, 2.0 * std::numbers::pi);
      const double dist = (base.radius + r) * uniform(gen, 0.3, 1.3);
      f.push_back({base.center + dist * Eigen::Vector2d(std::cos(ang), std::sin(ang)), r});
    }
    if (!is_separable(f).separable) return f;
  }
  throw error(errc::no_convergence, "no non-separable family found");
}

/// Random family with no connectivity bias; may or may not be separable.
inline disk_family random_disk_family(int n, std::uint64_t seed, double spread = 4.0) {
  rng gen(seed);
  disk_family f;
  for (int i = 0; i < n; ++i) {
    f.push_back({Eigen::Vector2d(uniform(gen, -spread, spread), uniform(gen, -spread, spread)), uniform(gen, 0.2, 1.5)});
  }
  return f;
}

}  // namespace cylpack
