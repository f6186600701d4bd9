#pragma once

// Sampled multiplicity of a cylinder family inside a body: how many of the
// sets C_i ∩ K contain each point, counted over open interiors (packings) and
// closed sets (coverings).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cylpack/convex_body.hpp"
#include "cylpack/core/parallel.hpp"
#include "cylpack/core/random.hpp"
#include "cylpack/cylinder.hpp"

namespace cylpack {

struct multiplicity_counts {
  int interior = 0;
  int closed = 0;
};

/// Family prepared for repeated membership queries. Cap cylinders are first
/// screened by a single product with their poles.
class family_index {
 public:
  explicit family_index(const std::vector<cylinder>& family) : family_(&family) {
    std::vector<int> caps;
    for (int i = 0; i < static_cast<int>(family.size()); ++i) {
      if (family[i].is_cap()) {
        caps.push_back(i);
      } else {
        others_.push_back(i);
      }
    }
    if (!caps.empty()) {
      const int d = family.front().ambient_dim();
      poles_.resize(static_cast<Eigen::Index>(caps.size()), d);
      thresholds_.resize(static_cast<Eigen::Index>(caps.size()));
      for (std::size_t j = 0; j < caps.size(); ++j) {
        const auto& c = family[caps[j]];
        poles_.row(static_cast<Eigen::Index>(j)) = c.pole_world().transpose();
        thresholds_(static_cast<Eigen::Index>(j)) = c.cos_delta() - 2.0 * interior_margin;
        two_sided_.push_back(std::get<cap_base>(c.base()).two_sided);
      }
      caps_ = std::move(caps);
    }
  }

  multiplicity_counts count(const Eigen::VectorXd& x) const {
    multiplicity_counts out;
    auto tally = [&](int i) {
      const double depth = (*family_)[i].depth(x);
      if (depth > interior_margin) ++out.interior;
      if (depth >= -interior_margin) ++out.closed;
    };
    if (!caps_.empty()) {
      const Eigen::VectorXd dots = poles_ * x;
      for (Eigen::Index j = 0; j < dots.size(); ++j) {
        const double t = two_sided_[j] ? std::abs(dots(j)) : dots(j);
        if (t >= thresholds_(j)) tally(caps_[j]);
      }
    }
    for (int i : others_) tally(i);
    return out;
  }

 private:
  const std::vector<cylinder>* family_;
  std::vector<int> caps_, others_;
  Eigen::MatrixXd poles_;
  Eigen::VectorXd thresholds_;
  std::vector<bool> two_sided_;
};

struct multiplicity_report {
  long samples = 0;
  int max_mult = 0;  // open interiors
  int min_mult = 0;  // closed sets
  int max_closed = 0;
  int min_interior = 0;
  double coverage_fraction = 0.0;  // share of samples in at least one closed set
  Eigen::VectorXd witness_max;
  Eigen::VectorXd witness_min;
  std::uint64_t seed = 0;
};

namespace detail {

struct block_tally {
  int max_interior = -1, min_interior = std::numeric_limits<int>::max();
  int max_closed = -1, min_closed = std::numeric_limits<int>::max();
  long covered = 0;
  Eigen::VectorXd witness_max, witness_min;
};

}  // namespace detail

inline constexpr long multiplicity_block = 4096;

/// Samples n uniform points of K in fixed-size blocks with derived seeds; the
/// reduction runs in block order so the report is independent of threading.
inline multiplicity_report estimate_multiplicity(const convex_body& k, const std::vector<cylinder>& family, long n,
                                                 std::uint64_t seed) {
  require(n >= 1, errc::domain_error, "need at least one sample");
  for (const auto& c : family) {
    require(c.ambient_dim() == k.dim(), errc::dimension_mismatch, "cylinder and body dimensions differ");
  }
  const family_index index(family);
  const long blocks = (n + multiplicity_block - 1) / multiplicity_block;
  std::vector<detail::block_tally> tallies(static_cast<std::size_t>(blocks));
  parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
    rng gen(derive_seed(seed, b));
    auto& t = tallies[b];
    const long count = std::min(multiplicity_block, n - static_cast<long>(b) * multiplicity_block);
    for (long i = 0; i < count; ++i) {
      const Eigen::VectorXd x = k.sample(gen);
      const auto m = index.count(x);
      if (m.interior > t.max_interior) {
        t.max_interior = m.interior;
        t.witness_max = x;
      }
      if (m.closed < t.min_closed) {
        t.min_closed = m.closed;
        t.witness_min = x;
      }
      t.min_interior = std::min(t.min_interior, m.interior);
      t.max_closed = std::max(t.max_closed, m.closed);
      if (m.closed >= 1) ++t.covered;
    }
  });
  multiplicity_report r;
  r.samples = n;
  r.seed = seed;
  r.max_mult = -1;
  r.min_mult = std::numeric_limits<int>::max();
  r.min_interior = std::numeric_limits<int>::max();
  long covered = 0;
  for (const auto& t : tallies) {
    if (t.max_interior > r.max_mult) {
      r.max_mult = t.max_interior;
      r.witness_max = t.witness_max;
    }
    if (t.min_closed < r.min_mult) {
      r.min_mult = t.min_closed;
      r.witness_min = t.witness_min;
    }
    r.min_interior = std::min(r.min_interior, t.min_interior);
    r.max_closed = std::max(r.max_closed, t.max_closed);
    covered += t.covered;
  }
  r.coverage_fraction = static_cast<double>(covered) / n;
  return r;
}

struct verification {
  bool pass = false;
  std::optional<Eigen::VectorXd> witness;  // point with too high or too low multiplicity
  int failed_base = -1;                    // index of a base outside its shadow
  multiplicity_report report;
  bool probabilistic = true;
};

/// r-fold packing: every base inside its shadow and no sample in more than r
/// open interiors.
inline verification verify_packing(const convex_body& k, const std::vector<cylinder>& family, int r, long n,
                                   std::uint64_t seed) {
  verification v;
  for (int i = 0; i < static_cast<int>(family.size()); ++i) {
    if (!base_contained(k, family[i])) {
      v.failed_base = i;
      break;
    }
  }
  v.report = estimate_multiplicity(k, family, n, seed);
  if (v.report.max_mult > r) v.witness = v.report.witness_max;
  v.pass = v.failed_base < 0 && !v.witness;
  return v;
}

/// r-fold covering: every sample in at least r closed sets.
inline verification verify_covering(const convex_body& k, const std::vector<cylinder>& family, int r, long n,
                                    std::uint64_t seed) {
  verification v;
  v.report = estimate_multiplicity(k, family, n, seed);
  if (v.report.min_mult < r) v.witness = v.report.witness_min;
  v.pass = !v.witness;
  return v;
}

}  // namespace cylpack
