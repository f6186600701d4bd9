#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace cylpack {

enum class relation { le, ge };

inline const char* to_string(relation r) { return r == relation::le ? "<=" : ">="; }

/// Both sides of one inequality on one instance. The comparison allows the
/// stated tolerance: 1e-9 on exact paths, three standard errors otherwise.
struct bound_report {
  std::string theorem_id;
  double lhs = 0.0;
  double rhs = 0.0;
  relation direction = relation::le;
  double slack = 0.0;  // rhs - lhs for <=, lhs - rhs for >=
  double tolerance = 1e-9;
  bool probabilistic = false;
  std::string instance_digest;
  bool pass = false;
  std::vector<std::pair<std::string, double>> extras;
  std::string note;
};

/// Fills slack and pass from lhs, rhs, direction and the standard error of
/// the difference (zero on exact paths).
inline bound_report make_report(std::string id, double lhs, double rhs, relation dir, double std_error = 0.0,
                                double exact_tol = 1e-9) {
  bound_report r;
  r.theorem_id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.direction = dir;
  r.slack = dir == relation::le ? rhs - lhs : lhs - rhs;
  r.probabilistic = std_error > 0.0;
  r.tolerance = r.probabilistic ? 3.0 * std_error : exact_tol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
  r.pass = r.slack >= -r.tolerance;
  return r;
}

}  // namespace cylpack
