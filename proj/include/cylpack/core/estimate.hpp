#pragma once

#include <cmath>

namespace cylpack {

/// A scalar with a one-sigma standard error; std_error == 0 marks an exact value.
struct estimate {
  double value = 0.0;
  double std_error = 0.0;

  bool exact() const { return std_error == 0.0; }
};

inline estimate operator+(estimate a, estimate b) {
  return {a.value + b.value, std::hypot(a.std_error, b.std_error)};
}

inline estimate operator*(double s, estimate a) { return {s * a.value, std::abs(s) * a.std_error}; }

inline estimate operator/(estimate a, estimate b) {
  const double q = a.value / b.value;
  if (a.exact() && b.exact()) return {q, 0.0};
  const double ra = a.value != 0.0 ? a.std_error / a.value : 0.0;
  const double rb = b.std_error / b.value;
  double err = std::abs(q) * std::hypot(ra, rb);
  if (a.value == 0.0) err = a.std_error / std::abs(b.value);
  return {q, err};
}

}  // namespace cylpack
