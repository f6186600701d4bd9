#pragma once

// Cos-power integrals, ball and cap volumes, spherical cap measures.
//
// Throughout, I_n(delta) denotes the integral of cos^n(t) over
// [pi/2 - delta, pi/2], evaluated in the equivalent form
// int_0^delta sin^n(s) ds so that small delta keeps full relative accuracy.

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cylpack/core/errors.hpp"

namespace cylpack {

/// Volume of the m-dimensional Euclidean unit ball; omega_0 = 1.
inline double unit_ball_volume(int m) {
  require(m >= 0, errc::domain_error, "unit ball dimension must be >= 0");
  const double half = 0.5 * m;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return std::round(out);
}

namespace detail {

inline void check_cos_power_args(int n, double delta) {
  require(n >= 0, errc::domain_error, "cos power must be >= 0, got " + std::to_string(n));
  require(delta > 0.0 && delta <= std::numbers::pi / 2, errc::domain_error,
          "delta must lie in (0, pi/2], got " + std::to_string(delta));
}

}  // namespace detail

/// I_n(delta) by adaptive Gauss-Kronrod quadrature. A tighter requested
/// tolerance only drives the error estimate into rounding noise and the
/// subdivision to full depth; this setting is already accurate to ~1e-14
/// relative for n <= 60.
inline double cos_power_integral(int n, double delta) {
  detail::check_cos_power_args(n, delta);
  if (n == 0) return delta;
  auto integrand = [n](double s) { return std::pow(std::sin(s), n); };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, delta, 15, 1e-12,
                                                                        &err);
}

/// I_n(delta) by the integration-by-parts recurrence
/// I_n = -sin^{n-1}(delta) cos(delta) / n + (n-1)/n I_{n-2}.
/// Kept as an independent second route for the quadrature above.
inline double cos_power_integral_recurrence(int n, double delta) {
  detail::check_cos_power_args(n, delta);
  const double s = std::sin(delta);
  const double c = std::cos(delta);
  double even = delta;                                  // I_0
  double odd = 2.0 * std::pow(std::sin(0.5 * delta), 2);  // I_1 = 1 - cos(delta)
  if (n == 0) return even;
  if (n == 1) return odd;
  double prev = (n % 2 == 0) ? even : odd;
  for (int j = (n % 2 == 0) ? 2 : 3; j <= n; j += 2) {
    prev = -std::pow(s, j - 1) * c / j + (j - 1.0) / j * prev;
  }
  return prev;
}

/// int_{-pi/2}^{pi/2} cos^n(t) dt.
inline double cos_power_full(int n) { return 2.0 * cos_power_integral(n, std::numbers::pi / 2); }

struct sandwich_bounds {
  double lower;
  double upper;
};

/// delta sin^n(delta) / (e (n+1))  <=  I_n(delta)  <=  delta sin^n(delta).
inline sandwich_bounds lemma_sandwich(int n, double delta) {
  require(n >= 1, errc::domain_error, "sandwich needs n >= 1");
  require(delta > 0.0 && delta < std::numbers::pi / 2, errc::domain_error, "sandwich needs delta in (0, pi/2)");
  const double upper = delta * std::pow(std::sin(delta), n);
  return {upper / (std::numbers::e * (n + 1)), upper};
}

/// The factor (1 - beta) beta^n at beta = n/(n+1), which the lower sandwich
/// bound replaces by 1/(e (n+1)).
inline double sandwich_beta_factor(int n) {
  const double beta = static_cast<double>(n) / (n + 1);
  return (1.0 - beta) * std::pow(beta, n);
}

/// Volume of the one-sided solid cap {z in B^m : <z, x> >= cos delta}.
inline double cap_volume(int m, double delta) {
  require(m >= 1, errc::domain_error, "cap dimension must be >= 1");
  return unit_ball_volume(m - 1) * cos_power_integral(m, delta);
}

/// Normalized surface measure of the cap {z in S^{d-1} : <z,x> >= cos delta}
/// (or of |<z,x>| >= cos delta when antipodal).
inline double spherical_cap_fraction(int d, double delta, bool antipodal = false) {
  require(d >= 2, errc::domain_error, "sphere S^{d-1} needs d >= 2");
  const double one_sided = cos_power_integral(d - 2, delta) / cos_power_full(d - 2);
  return antipodal ? 2.0 * one_sided : one_sided;
}

/// Same measure through the ball-volume ratio omega_{d-3}/omega_{d-2}; d >= 4.
inline double spherical_cap_fraction_ratio_form(int d, double delta, bool antipodal = false) {
  require(d >= 4, errc::domain_error, "ratio form needs d >= 4");
  const double one_sided =
      unit_ball_volume(d - 3) / unit_ball_volume(d - 2) * cos_power_integral(d - 2, delta);
  return antipodal ? 2.0 * one_sided : one_sided;
}

}  // namespace cylpack
