#pragma once

// Checkers that evaluate both sides of the covering and packing inequalities
// for cylinder families, the projection-slice inequality and the
// hyperplane-projection bound for planks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cylpack/convex_body.hpp"
#include "cylpack/core/errors.hpp"
#include "cylpack/core/estimate.hpp"
#include "cylpack/cylinder.hpp"
#include "cylpack/multiplicity.hpp"
#include "cylpack/mvee.hpp"
#include "cylpack/plank2d.hpp"
#include "cylpack/projection.hpp"
#include "cylpack/report.hpp"
#include "cylpack/slice.hpp"
#include "cylpack/special_functions.hpp"

namespace cylpack {

struct check_options {
  long samples = 20000;  // multiplicity samples for the pre-verification
  std::uint64_t seed = 1;
  volume_options volume{};
  max_slice_options slices{};
};

inline int common_codim(const std::vector<cylinder>& family) {
  require(!family.empty(), errc::domain_error, "empty cylinder family");
  const int k = family.front().k();
  for (const auto& c : family) require(c.k() == k, errc::domain_error, "family mixes codimensions");
  return k;
}

/// Sum of crv over the family, with the standard errors combined.
inline estimate sum_crv(const convex_body& k, const std::vector<cylinder>& family, const volume_options& opt = {}) {
  double v = 0.0, var = 0.0;
  for (const auto& c : family) {
    const estimate e = crv(k, c, opt);
    v += e.value;
    var += e.std_error * e.std_error;
  }
  return {v, std::sqrt(var)};
}

/// A planar plank family given as cylinders, if every member is one.
inline std::optional<std::vector<plank2d>> as_planks_2d(const std::vector<cylinder>& family) {
  std::vector<plank2d> out;
  for (const auto& c : family) {
    if (c.ambient_dim() != 2 || c.k() != 1) return std::nullopt;
    const auto* p = std::get_if<polytope_base>(&c.base());
    if (!p) return std::nullopt;
    out.push_back({Eigen::Vector2d(c.e().column(0)), p->vertices.minCoeff(), p->vertices.maxCoeff()});
  }
  return out;
}

struct packing_check {
  bool pass = false;
  bool exact = false;  // planar plank families use the arrangement check
  int max_mult = 0;
  int min_cover = 0;
};

/// r-fold packing (or covering) test: exact for planar planks, sampled
/// otherwise.
inline packing_check check_multiplicity(const convex_body& k, const std::vector<cylinder>& family, int r,
                                        bool covering, const check_options& opt) {
  packing_check out;
  if (auto planks = as_planks_2d(family)) {
    const region2d reg = region_of(k);
    const auto m = exact_max_multiplicity(reg, *planks);
    out.exact = true;
    out.max_mult = m.max_mult;
    out.min_cover = m.min_cover;
    bool bases = true;
    for (const auto& p : *planks) bases = bases && plank_in_shadow(reg, p);
    out.pass = covering ? m.min_cover >= r : (bases && m.max_mult <= r);
    return out;
  }
  const verification v =
      covering ? verify_covering(k, family, r, opt.samples, opt.seed) : verify_packing(k, family, r, opt.samples, opt.seed);
  out.pass = v.pass;
  out.max_mult = v.report.max_mult;
  out.min_cover = v.report.min_mult;
  return out;
}

enum class covering_mode { general, ellipsoid_k1 };

/// Sum of crv >= r / C(d, k) for an r-fold covering; >= r for 1-codimensional
/// coverings of an ellipsoid.
inline bound_report check_covering_lower(const convex_body& k, const std::vector<cylinder>& family, int r,
                                         covering_mode mode, const check_options& opt = {}) {
  const int kk = common_codim(family);
  const int d = k.dim();
  if (mode == covering_mode::ellipsoid_k1) {
    require(k.is_ellipsoidal() && kk == 1, errc::domain_error, "ellipsoid mode needs an ellipsoid and k = 1");
  }
  const packing_check pc = check_multiplicity(k, family, r, true, opt);
  require(pc.pass, errc::not_a_covering, "family is not an r-fold covering (min multiplicity " +
                                             std::to_string(pc.min_cover) + ")");
  const estimate s = sum_crv(k, family, opt.volume);
  const double rhs = mode == covering_mode::ellipsoid_k1 ? r : r / binomial(d, kk);
  bound_report rep = make_report(mode == covering_mode::ellipsoid_k1 ? "covering_lower_ellipsoid" : "covering_lower",
                                 s.value, rhs, relation::ge, s.std_error);
  rep.probabilistic = rep.probabilistic || !pc.exact;
  rep.extras = {{"d", d}, {"k", kk}, {"r", r}, {"n", static_cast<double>(family.size())}, {"min_cover", pc.min_cover}};
  return rep;
}

/// Sum of crv <= r for r-fold packings of an ellipsoid by 1- or
/// 2-codimensional cylinders.
inline bound_report check_packing_upper_ellipsoid(const convex_body& k, const std::vector<cylinder>& family, int r,
                                                  const check_options& opt = {}) {
  const int kk = common_codim(family);
  require(k.is_ellipsoidal(), errc::domain_error, "body must be an ellipsoid");
  require(kk == 1 || kk == 2, errc::domain_error, "the ellipsoid packing bound covers k in {1, 2}");
  const packing_check pc = check_multiplicity(k, family, r, false, opt);
  require(pc.pass, errc::not_a_packing, "family is not an r-fold packing (max multiplicity " +
                                            std::to_string(pc.max_mult) + ")");
  const estimate s = sum_crv(k, family, opt.volume);
  bound_report rep = make_report("packing_upper_ellipsoid", s.value, r, relation::le, s.std_error);
  rep.probabilistic = rep.probabilistic || !pc.exact;
  rep.extras = {{"d", k.dim()}, {"k", kk}, {"r", r}, {"n", static_cast<double>(family.size())},
                {"max_multiplicity", pc.max_mult}};
  return rep;
}

/// Sum of crv <= r d_K^{d-k} for k in {1, 2}, with d_K replaced by the
/// certified bound from the enclosing ellipsoid (1 for ellipsoids).
inline bound_report check_packing_scaled(const convex_body& k, const std::vector<cylinder>& family, int r,
                                         const check_options& opt = {}) {
  const int kk = common_codim(family);
  require(kk == 1 || kk == 2, errc::domain_error, "the scaled packing bound covers k in {1, 2}");
  const int d = k.dim();
  double dk = 1.0, john = 1.0;
  if (k.is_polytope()) {
    const banach_mazur_bound bm = banach_mazur_upper(k.as_polytope());
    dk = bm.certified;
    john = bm.john;
  }
  const packing_check pc = check_multiplicity(k, family, r, false, opt);
  require(pc.pass, errc::not_a_packing, "family is not an r-fold packing");
  const estimate s = sum_crv(k, family, opt.volume);
  bound_report rep = make_report("packing_scaled", s.value, r * std::pow(dk, d - kk), relation::le, s.std_error);
  rep.probabilistic = rep.probabilistic || !pc.exact;
  rep.extras = {{"d", d}, {"k", kk}, {"r", r}, {"dk_bound", dk}, {"john_factor", john},
                {"rhs_with_john", r * std::pow(john, d - kk)}};
  return rep;
}

namespace detail {

/// Search region for translates inside the base of a cylinder.
inline slice_region base_region(const cylinder& c) {
  const int m = c.e().dim();
  slice_region r;
  r.lo.resize(m);
  r.hi.resize(m);
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd ei = Eigen::VectorXd::Unit(m, i);
    r.hi(i) = c.base_support(ei);
    r.lo(i) = -c.base_support(-ei);
  }
  switch (c.base().index()) {
    case 0:
      r.hint = std::get<polytope_base>(c.base()).vertices.rowwise().mean();
      break;
    case 1:
      r.hint = std::get<disk_base>(c.base()).center;
      break;
    default: {
      const auto& cap = std::get<cap_base>(c.base());
      r.hint = 0.5 * (1.0 + std::cos(cap.delta)) * cap.pole;
    }
  }
  r.inside = [c](const Eigen::VectorXd& y) { return c.base_depth(y) >= -1e-12; };
  return r;
}

}  // namespace detail

/// Sum of crv <= r C(d,k) max_i maxslice(K, H_i) / maxslice(C_i ∩ K, H_i).
/// A slice of C_i ∩ K through a point over y equals the slice of K there when
/// y lies in the base, so the denominator is a maximum over the base.
inline bound_report check_covcylgen(const convex_body& k, const std::vector<cylinder>& family, int r,
                                    const check_options& opt = {}) {
  const int kk = common_codim(family);
  const int d = k.dim();
  const packing_check pc = check_multiplicity(k, family, r, false, opt);
  require(pc.pass, errc::not_a_packing, "family is not an r-fold packing");
  // Congruent cap cylinders in a centred ball share one ratio.
  const bool centred_ball = k.is_ball() && k.as_ball().center.norm() == 0.0;
  std::map<std::tuple<double, bool>, std::pair<double, double>> memo;
  double worst = 0.0, worst_se = 0.0;
  for (const auto& c : family) {
    std::pair<double, double> ratio;
    const auto* cap = std::get_if<cap_base>(&c.base());
    const auto key = cap ? std::make_tuple(cap->delta, cap->two_sided) : std::make_tuple(0.0, false);
    if (centred_ball && cap && memo.count(key)) {
      ratio = memo[key];
    } else {
      const max_slice_result whole = max_slice(k, c.e(), c.h(), shadow_region(k, c.e()), opt.slices);
      const max_slice_result part = max_slice(k, c.e(), c.h(), detail::base_region(c), opt.slices);
      require(!whole.unstable && !part.unstable, errc::slice_estimate_unstable,
              "grid refinement moved a slice maximum by more than the instability threshold");
      require(part.value > 0.0, errc::degenerate_body, "cylinder misses the body");
      const double q = whole.value / part.value;
      const double se = q * std::hypot(whole.std_error / whole.value, part.std_error / part.value);
      ratio = {q, se};
      if (centred_ball && cap) memo[key] = ratio;
    }
    if (ratio.first > worst) {
      worst = ratio.first;
      worst_se = ratio.second;
    }
  }
  const estimate s = sum_crv(k, family, opt.volume);
  const double rhs = r * binomial(d, kk) * worst;
  bound_report rep = make_report("covcylgen", s.value, rhs, relation::le,
                                 std::hypot(s.std_error, r * binomial(d, kk) * worst_se));
  rep.probabilistic = rep.probabilistic || !pc.exact;
  rep.extras = {{"d", d}, {"k", kk}, {"r", r}, {"max_slice_ratio", worst}};
  return rep;
}

struct rogers_shephard_reports {
  bound_report upper;  // maxslice * vol_k(P_E K) <= C(d,k) vol_d K
  bound_report lower;  // maxslice * vol_k(P_E K) >= vol_d K
  max_slice_result slice;
};

/// Both directions of the projection-slice inequality for a k-frame E.
inline rogers_shephard_reports check_rogers_shephard(const convex_body& k, const frame& e,
                                                     const check_options& opt = {}) {
  const int d = k.dim();
  const int kk = e.dim();
  require(kk >= 1 && kk < d, errc::domain_error, "E must be a proper subspace");
  const frame h = complement(e);
  rogers_shephard_reports out;
  out.slice = max_slice(k, e, h, shadow_region(k, e), opt.slices);
  const estimate proj = volume(project_body(k, e), opt.volume);
  const estimate vol = volume(k, opt.volume);
  const double lhs = out.slice.value * proj.value;
  const double lhs_se = std::hypot(out.slice.std_error * proj.value, out.slice.value * proj.std_error);
  const double c = binomial(d, kk);
  out.upper = make_report("rogers_shephard_upper", lhs, c * vol.value, relation::le, std::hypot(lhs_se, c * vol.std_error));
  out.lower = make_report("rogers_shephard_lower", lhs, vol.value, relation::ge, std::hypot(lhs_se, vol.std_error));
  for (auto* rep : {&out.upper, &out.lower}) {
    rep->extras = {{"d", d}, {"k", kk}, {"max_slice", out.slice.value}, {"projection", proj.value},
                   {"volume", vol.value}, {"unstable", out.slice.unstable ? 1.0 : 0.0}};
  }
  return out;
}

/// Sum of vol_{d-1}(B_i) <= c_d r max_L vol_{d-1}(P_L K) for r-fold packings
/// by 1-codimensional cylinders.
inline bound_report check_pack1cyl(const convex_body& k, const std::vector<cylinder>& family, int r,
                                   const check_options& opt = {}) {
  const int kk = common_codim(family);
  require(kk == 1, errc::domain_error, "the projection bound is for 1-codimensional cylinders");
  const int d = k.dim();
  const packing_check pc = check_multiplicity(k, family, r, false, opt);
  require(pc.pass, errc::not_a_packing, "family is not an r-fold packing");
  double sum = 0.0, var = 0.0;
  for (const auto& c : family) {
    const estimate b = c.base_volume(opt.volume);
    sum += b.value;
    var += b.std_error * b.std_error;
  }
  const direction_max mp = max_hyperplane_projection(k);
  const double cd = cauchy_constant(d);
  bound_report rep = make_report("pack1cyl", sum, cd * r * mp.value, relation::le, std::sqrt(var));
  rep.probabilistic = rep.probabilistic || !pc.exact;
  rep.extras = {{"d", d}, {"r", r}, {"c_d", cd}, {"max_projection", mp.value}};
  return rep;
}

/// Surface area by averaging projection volumes over directions versus the
/// exact value; passes within a relative tolerance.
inline bound_report check_cauchy_formula(const convex_body& k, double rel_tol = 5e-3) {
  const double quad = cauchy_surface_quadrature(k);
  const double exact = surface_area(k);
  bound_report rep = make_report("cauchy_formula", std::abs(quad - exact) / exact, rel_tol, relation::le, 0.0, 0.0);
  rep.extras = {{"quadrature", quad}, {"exact", exact}};
  return rep;
}

/// c_d / sqrt(pi d / 2) lies within a relative band around 1.
inline bound_report check_cd_asymptotic(int d, double band = 0.05) {
  const double ratio = cauchy_constant(d) / std::sqrt(std::numbers::pi * d / 2.0);
  bound_report rep = make_report("cd_asymptotic", std::abs(ratio - 1.0), band, relation::le, 0.0, 0.0);
  rep.extras = {{"d", d}, {"c_d", cauchy_constant(d)}, {"ratio", ratio}};
  return rep;
}

struct plank_experiment {
  int trials = 0;
  double min_ratio = INFINITY;  // smallest (sum of relative widths) / r seen
  std::vector<plank2d> best;
};

/// Searches random r-fold plank coverings of a planar region for small total
/// relative width. Each trial starts from r random chains across the
/// region and removes planks while the covering survives. Nothing is
/// asserted about the outcome.
inline plank_experiment symmetric_plank_experiment(const convex_body& k, int r, int trials, std::uint64_t seed) {
  require(k.dim() == 2, errc::dimension_mismatch, "the plank experiment is planar");
  const region2d reg = region_of(k);
  plank_experiment out;
  rng gen(seed);
  auto rel = [&](const plank2d& p) { return p.width() / (reg.support(p.u) + reg.support(-p.u)); };
  for (int t = 0; t < trials; ++t) {
    std::vector<plank2d> planks;
    for (int layer = 0; layer < r + 1; ++layer) {
      const double ang = uniform(gen, 0.0, std::numbers::pi);
      const Eigen::Vector2d u(std::cos(ang), std::sin(ang));
      for (const auto& p : plank_partition_2d(reg, u, 2 + static_cast<int>(uniform01(gen) * 3), 1, gen())) {
        planks.push_back(p);
      }
    }
    if (exact_max_multiplicity(reg, planks).min_cover < r) continue;
    std::vector<std::size_t> order(planks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), gen);
    std::vector<bool> keep(planks.size(), true);
    for (std::size_t i : order) {
      keep[i] = false;
      std::vector<plank2d> trial;
      for (std::size_t j = 0; j < planks.size(); ++j) {
        if (keep[j]) trial.push_back(planks[j]);
      }
      if (trial.empty() || exact_max_multiplicity(reg, trial).min_cover < r) keep[i] = true;
    }
    std::vector<plank2d> kept;
    double total = 0.0;
    for (std::size_t j = 0; j < planks.size(); ++j) {
      if (keep[j]) {
        kept.push_back(planks[j]);
        total += rel(planks[j]);
      }
    }
    ++out.trials;
    if (total / r < out.min_ratio) {
      out.min_ratio = total / r;
      out.best = kept;
    }
  }
  return out;
}

}  // namespace cylpack
