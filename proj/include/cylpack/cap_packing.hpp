#pragma once

// Cap cylinders over a maximal separated set on the sphere: the packing of
// the unit ball whose total cross-sectional volume cannot be too small.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cylpack/core/random.hpp"
#include "cylpack/cylinder.hpp"
#include "cylpack/frame.hpp"
#include "cylpack/multiplicity.hpp"
#include "cylpack/special_functions.hpp"

namespace cylpack {

enum class sphere_metric { geodesic, projective };

inline std::string to_string(sphere_metric m) { return m == sphere_metric::geodesic ? "geodesic" : "projective"; }

struct separated_set {
  int dim = 0;
  std::vector<Eigen::VectorXd> points;
  double separation = 0.0;  // 2 delta
  sphere_metric metric = sphere_metric::geodesic;
  bool maximal = false;  // last probe round found no uncovered point
  long maximality_trials = 0;
  long uncovered_trials = 0;
  long proposals = 0;
  int rounds = 0;  // saturation rounds run
};

struct separated_options {
  long rejection_budget = 10000;
  long maximality_trials = 100000;
  int saturation_rounds = 100;
};

namespace detail {

// Row-major point store; close(x) reports whether x lies within the
// separation of a stored point.
class point_store {
 public:
  point_store(int d, double cos_sep, bool projective) : d_(d), cos_sep_(cos_sep), projective_(projective) {}

  bool close(const double* x) const {
    const std::size_t n = data_.size() / d_;
    for (std::size_t i = 0; i < n; ++i) {
      const double* p = data_.data() + i * d_;
      double dot = 0.0;
      for (int j = 0; j < d_; ++j) dot += p[j] * x[j];
      if ((projective_ ? std::abs(dot) : dot) >= cos_sep_) return true;
    }
    return false;
  }

  void add(const double* x) { data_.insert(data_.end(), x, x + d_); }

 private:
  int d_;
  double cos_sep_;
  bool projective_;
  std::vector<double> data_;
};

}  // namespace detail

/// Greedy separated set: uniform proposals are accepted when farther than
/// two_delta from every member, until a run of rejections. Maximality is then
/// checked (and enforced) with rounds of fresh uniform probes.
inline separated_set build_separated_set(int d, double two_delta, sphere_metric metric, std::uint64_t seed,
                                         const separated_options& opt = {}) {
  require(d >= 2, errc::domain_error, "separated sets need d >= 2");
  require(two_delta > 0.0 && two_delta < std::numbers::pi / 2, errc::domain_error,
          "separation must lie in (0, pi/2)");
  separated_set s;
  s.dim = d;
  s.separation = two_delta;
  s.metric = metric;
  const double cos_sep = std::cos(two_delta);
  detail::point_store store(d, cos_sep, metric == sphere_metric::projective);
  rng gen(seed);
  long streak = 0;
  while (streak < opt.rejection_budget) {
    const Eigen::VectorXd x = uniform_sphere(gen, d);
    ++s.proposals;
    if (store.close(x.data())) {
      ++streak;
      continue;
    }
    store.add(x.data());
    s.points.push_back(x);
    streak = 0;
  }
  // Saturation: probe with fresh uniform points, insert every probe that is
  // still uncovered, and repeat until a full round finds none.
  s.maximality_trials = opt.maximality_trials;
  for (int round = 0; round < opt.saturation_rounds; ++round) {
    rng probe(derive_seed(seed, 0x6d61786dULL + static_cast<std::uint64_t>(round)));
    s.uncovered_trials = 0;
    for (long t = 0; t < opt.maximality_trials; ++t) {
      const Eigen::VectorXd x = uniform_sphere(probe, d);
      if (store.close(x.data())) continue;
      ++s.uncovered_trials;
      store.add(x.data());
      s.points.push_back(x);
    }
    s.rounds = round + 1;
    if (s.uncovered_trials == 0) break;
  }
  s.maximal = s.uncovered_trials == 0;
  return s;
}

/// Angular distance in the chosen metric.
inline double sphere_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b, sphere_metric m) {
  const double dot = std::clamp(a.dot(b), -1.0, 1.0);
  return std::acos(m == sphere_metric::projective ? std::abs(dot) : dot);
}

/// Smallest pairwise distance, from dot products.
inline double min_pairwise_distance(const separated_set& s) {
  double best_dot = -1.0;
  const bool proj = s.metric == sphere_metric::projective;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    for (std::size_t j = i + 1; j < s.points.size(); ++j) {
      const double dot = s.points[i].dot(s.points[j]);
      best_dot = std::max(best_dot, proj ? std::abs(dot) : dot);
    }
  }
  return std::acos(std::clamp(best_dot, -1.0, 1.0));
}

struct cap_family {
  double delta = 0.0;
  int k = 0;
  bool two_sided = false;
  std::vector<cylinder> cylinders;
  bool degenerate = false;  // k = d - 1: bases are segments
};

/// C(x) = S(x, delta, E_x) + E_x^perp with E_x spanned by x and d-k-1 seeded
/// Gaussian vectors, so x is the first frame column and the pole is e_1.
inline cap_family build_cap_family(const separated_set& s, double delta, int k, std::uint64_t seed,
                                   bool two_sided = false) {
  const int d = s.dim;
  require(delta > 0.0 && delta < std::numbers::pi / 2, errc::domain_error, "cap angle must lie in (0, pi/2)");
  require(k >= 1 && k <= d - 1, errc::domain_error, "cap cylinders need 1 <= k <= d-1");
  cap_family f;
  f.delta = delta;
  f.k = k;
  f.two_sided = two_sided;
  f.degenerate = k == d - 1;
  const int m = d - k;
  f.cylinders.reserve(s.points.size());
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    rng gen(derive_seed(seed, i));
    Eigen::MatrixXd cols(d, m);
    cols.col(0) = s.points[i];
    for (int j = 1; j < m; ++j) cols.col(j) = gaussian_vector(gen, d);
    const frame e = orthonormalize(cols);
    f.cylinders.emplace_back(e, cap_base{Eigen::VectorXd::Unit(m, 0), delta, two_sided});
  }
  return f;
}

struct cap_chain_report {
  int d = 0, k = 0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::string metric;
  bool two_sided = false;
  int n = 0;
  bool maximal = false;
  long uncovered_trials = 0;
  double min_separation = 0.0;
  bool caps_disjoint = false;      // exact, from dot products
  double cap_fraction_2delta = 0.0;  // sigma(S(x, 2 delta)) in the matching convention
  double counting_bound = 0.0;       // 1 / sigma
  bool link_counting = false;        // N >= 1/sigma
  double counting_bound_one_sided = 0.0;  // 1 / sigma with one-sided caps
  bool link_counting_one_sided = false;
  double sum_crv = 0.0;              // N vol(B) / omega_{d-k}
  double sum_crv_direct = 0.0;       // summed crv() over the family
  double chain_rhs = 0.0;
  bool link_chain = false;           // sum_crv >= chain_rhs
  double sandwich_rhs = 0.0;         // chain_rhs with I's replaced by their bounds
  bool link_sandwich = false;        // chain_rhs >= sandwich_rhs
  double threshold = 0.0;            // sqrt(d) sin^{2-k} / (2^{d-2} (d-k)^{3/2})
  double empirical_constant = 0.0;   // sum_crv / threshold
  bool link_packing_upper = true;    // sum_crv <= 1 (checked when k <= 2)
  double maxslice_upper = 0.0;       // C(d,k) sin^{-k}
  bool link_maxslice_upper = false;  // sum_crv <= C(d,k) sin^{-k}
  double ratio_form_fraction = 0.0;  // sigma via omega_{d-3}/omega_{d-2}
  bool packing_verified = false;
  long packing_samples = 0;
  int max_multiplicity = 0;
  bool all_links = false;
};

/// Projective separation by default, so that even the two-sided caps
/// |<z, x>| >= cos delta are disjoint; the bases stay one-sided so the summed
/// volumes match N vol(S(x, delta)) / omega_{d-k}.
struct cap_report_options {
  sphere_metric metric = sphere_metric::projective;
  bool two_sided = false;
  long verify_samples = 100000;
  separated_options separation{};
};

/// Separated set used by the cap example for (d, delta, seed).
inline separated_set example_separated_set(int d, double delta, std::uint64_t seed,
                                           const cap_report_options& opt = {}) {
  return build_separated_set(d, 2 * delta, opt.metric, derive_seed(seed, 1), opt.separation);
}

/// Evaluates every link of the lower-bound chain for the cap family built on
/// a given separated set (which must have separation 2 delta).
inline cap_chain_report theorem_example_report(const separated_set& s, int k, double delta, std::uint64_t seed,
                                               const cap_report_options& opt = {}, cap_family* family_out = nullptr) {
  const int d = s.dim;
  require(d > 3, errc::domain_error, "the cap example needs d > 3");
  require(k >= 1 && k < d, errc::domain_error, "the cap example needs 1 <= k < d");
  require(delta > 0.0 && delta < std::numbers::pi / 4, errc::domain_error, "the cap example needs delta in (0, pi/4)");
  require(std::abs(s.separation - 2 * delta) < 1e-15, errc::domain_error, "separated set must use separation 2 delta");
  cap_chain_report r;
  r.d = d;
  r.k = k;
  r.delta = delta;
  r.seed = seed;
  r.metric = to_string(s.metric);
  r.two_sided = opt.two_sided;

  cap_family f = build_cap_family(s, delta, k, derive_seed(seed, 2), opt.two_sided);
  r.n = static_cast<int>(s.points.size());
  r.maximal = s.maximal;
  r.uncovered_trials = s.uncovered_trials;
  r.min_separation = r.n > 1 ? min_pairwise_distance(s) : std::numbers::pi;

  // One-sided caps of radius delta around points more than 2 delta apart are
  // disjoint; two-sided caps also need the antipodes that far apart.
  {
    const double cos_sep = std::cos(2 * delta);
    bool disjoint = true;
    for (int i = 0; i < r.n && disjoint; ++i) {
      for (int j = i + 1; j < r.n; ++j) {
        const double dot = s.points[i].dot(s.points[j]);
        if ((opt.two_sided ? std::abs(dot) : dot) >= cos_sep) {
          disjoint = false;
          break;
        }
      }
    }
    r.caps_disjoint = disjoint;
  }

  const int m = d - k;
  const bool projective = s.metric == sphere_metric::projective;
  r.cap_fraction_2delta = spherical_cap_fraction(d, 2 * delta, projective);
  r.ratio_form_fraction = spherical_cap_fraction_ratio_form(d, 2 * delta, projective);
  r.counting_bound = 1.0 / r.cap_fraction_2delta;
  r.link_counting = r.n >= r.counting_bound;
  r.counting_bound_one_sided = 1.0 / spherical_cap_fraction(d, 2 * delta, false);
  r.link_counting_one_sided = r.n >= r.counting_bound_one_sided;

  const double sides = opt.two_sided ? 2.0 : 1.0;
  r.sum_crv = r.n * sides * cap_volume(m, delta) / unit_ball_volume(m);
  const convex_body ball = convex_body::unit_ball(d);
  for (const auto& c : f.cylinders) r.sum_crv_direct += crv(ball, c).value;

  const double lead = unit_ball_volume(m - 1) / unit_ball_volume(m) * unit_ball_volume(d - 2) / unit_ball_volume(d - 3);
  r.chain_rhs = lead * cos_power_integral(m, delta) / cos_power_integral(d - 2, 2 * delta);
  r.link_chain = r.sum_crv >= r.chain_rhs * (1 - 1e-12);
  const auto num = lemma_sandwich(m, delta);
  const auto den = lemma_sandwich(d - 2, 2 * delta);
  r.sandwich_rhs = lead * num.lower / den.upper;
  r.link_sandwich = r.chain_rhs >= r.sandwich_rhs;

  const double sd = std::sin(delta);
  r.threshold = std::sqrt(static_cast<double>(d)) * std::pow(sd, 2.0 - k) /
                (std::pow(2.0, d - 2) * std::pow(static_cast<double>(m), 1.5));
  r.empirical_constant = r.sum_crv / r.threshold;
  if (k <= 2) r.link_packing_upper = r.sum_crv <= 1.0 + 1e-12;
  r.maxslice_upper = binomial(d, k) * std::pow(sd, -k);
  r.link_maxslice_upper = r.sum_crv <= r.maxslice_upper;

  if (opt.verify_samples > 0) {
    const auto v = verify_packing(ball, f.cylinders, 1, opt.verify_samples, derive_seed(seed, 3));
    r.packing_verified = v.pass;
    r.packing_samples = opt.verify_samples;
    r.max_multiplicity = v.report.max_mult;
  }
  r.all_links = r.caps_disjoint && r.link_counting && r.link_chain && r.link_sandwich && r.link_packing_upper &&
                r.link_maxslice_upper && (opt.verify_samples <= 0 || r.packing_verified);
  if (family_out) *family_out = std::move(f);
  return r;
}

/// Builds the separated set and family for (d, k, delta, seed) and reports.
inline cap_chain_report theorem_example_report(int d, int k, double delta, std::uint64_t seed,
                                               const cap_report_options& opt = {}, cap_family* family_out = nullptr) {
  require(d > 3, errc::domain_error, "the cap example needs d > 3");
  require(delta > 0.0 && delta < std::numbers::pi / 4, errc::domain_error, "the cap example needs delta in (0, pi/4)");
  return theorem_example_report(example_separated_set(d, delta, seed, opt), k, delta, seed, opt, family_out);
}

}  // namespace cylpack
