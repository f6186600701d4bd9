#pragma once

// The density p(x) = (1 - |x|^2)^{-1/2} on the open unit ball, whose integral
// along every chord is pi, and the surface measure on the unit sphere, whose
// mass over every affine 2-plane section is 2 pi.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cylpack/core/errors.hpp"
#include "cylpack/core/estimate.hpp"
#include "cylpack/core/parallel.hpp"
#include "cylpack/core/random.hpp"
#include "cylpack/cylinder.hpp"
#include "cylpack/frame.hpp"
#include "cylpack/special_functions.hpp"

namespace cylpack {

inline double density_at(const Eigen::VectorXd& x) {
  const double r2 = x.squaredNorm();
  require(std::abs(r2 - 1.0) > 1e-15, errc::on_unit_sphere,
          "the density is singular on the unit sphere; integrate instead");
  if (r2 > 1.0) return 0.0;
  return 1.0 / std::sqrt(1.0 - r2);
}

/// Integral of p along the line {x0 + t v}. With a the half-chord and the
/// substitution t = a sin(theta), the integrand a cos(theta) p(x(theta)) is
/// bounded and quadrature never touches the singular endpoints.
inline double line_integral(const Eigen::VectorXd& x0, const Eigen::VectorXd& direction) {
  require(x0.size() == direction.size(), errc::dimension_mismatch, "point and direction differ in length");
  const Eigen::VectorXd v = direction.normalized();
  const Eigen::VectorXd z = x0 - x0.dot(v) * v;  // foot of the line
  const double z2 = z.squaredNorm();
  require(z2 < 1.0, errc::chord_misses_ball, "line misses the open unit ball");
  const double a = std::sqrt(1.0 - z2);
  auto integrand = [&](double theta) {
    const double sn = std::sin(theta), cs = std::cos(theta);
    // 1 - |z + t v|^2 = (a - t)(a + t) with a - t = a cos^2 / (1 + sin),
    // written so that nothing cancels near the endpoints.
    const double gap = a * cs * cs / (1.0 + sn) * a * (1.0 + sn);
    if (gap <= 0.0) return 1.0;  // the limit value at the endpoints
    return a * cs / std::sqrt(gap);
  };
  const double h = std::numbers::pi / 2;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, -h, h, 15, 1e-14);
}

/// Mass of the sphere surface measure on the circle S^{d-1} ∩ (span H + z),
/// pushed forward to H^perp: circle length weighted by 1/cos(alpha), where
/// cos(alpha) = sqrt(1 - |P_{H^perp} y|^2) is the slant of the sphere at y.
inline double plane_section_integral(const frame& h, const Eigen::VectorXd& z) {
  require(h.dim() == 2, errc::dimension_mismatch, "plane sections need a 2-frame");
  require(z.size() == h.ambient_dim(), errc::dimension_mismatch, "offset has wrong dimension");
  const Eigen::VectorXd foot = z - h.project(z);
  const double z2 = foot.squaredNorm();
  require(z2 < 1.0, errc::plane_misses_sphere, "plane misses the open unit ball");
  const double rho = std::sqrt(1.0 - z2);
  const Eigen::VectorXd h1 = h.column(0), h2 = h.column(1);
  auto integrand = [&](double theta) {
    const Eigen::VectorXd y = foot + rho * (std::cos(theta) * h1 + std::sin(theta) * h2);
    const Eigen::VectorXd normal_part = y - h.project(y);
    const double cos_alpha = std::sqrt(std::max(0.0, 1.0 - normal_part.squaredNorm()));
    return rho / cos_alpha;
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, 2.0 * std::numbers::pi, 10,
                                                                        1e-14);
}

/// mu(C ∩ B_2^d) = pi vol_{d-1}(B) for a plank-like (k = 1) cylinder whose
/// base lies in the unit ball's shadow.
inline estimate mu_of_cylinder(const cylinder& c, const volume_options& opt = {}) {
  require(c.k() == 1, errc::dimension_mismatch, "the chord density applies to 1-codimensional cylinders");
  return std::numbers::pi * c.base_volume(opt);
}

/// Surface-measure analogue for 2-codimensional cylinders: 2 pi vol_{d-2}(B).
inline estimate sphere_mu_of_cylinder(const cylinder& c, const volume_options& opt = {}) {
  require(c.k() == 2, errc::dimension_mismatch, "the sphere measure applies to 2-codimensional cylinders");
  return 2.0 * std::numbers::pi * c.base_volume(opt);
}

/// Monte Carlo estimate of the integral of p over {x in B_2^d : inside(x)}.
/// Radii are drawn as rho = sqrt(1 - U^2) so that the weight rho^{d-2} stays
/// bounded; the integral is d omega_d E[rho^{d-2} 1_inside(rho theta)].
template <class Pred>
estimate mu_monte_carlo(int d, Pred&& inside, long samples, std::uint64_t seed) {
  require(d >= 2 && samples >= 1, errc::domain_error, "need d >= 2 and at least one sample");
  constexpr long block = 4096;
  const long blocks = (samples + block - 1) / block;
  std::vector<double> sum(blocks, 0.0), sum2(blocks, 0.0);
  parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
    rng gen(derive_seed(seed, b));
    const long n = std::min(block, samples - static_cast<long>(b) * block);
    for (long i = 0; i < n; ++i) {
      const double u = uniform01(gen);
      const double rho = std::sqrt(std::max(0.0, 1.0 - u * u));
      const Eigen::VectorXd x = rho * uniform_sphere(gen, d);
      const double w = inside(x) ? std::pow(rho, d - 2) : 0.0;
      sum[b] += w;
      sum2[b] += w * w;
    }
  });
  double s = 0.0, s2 = 0.0;
  for (long b = 0; b < blocks; ++b) {
    s += sum[b];
    s2 += sum2[b];
  }
  const double mean = s / samples;
  const double var = std::max(0.0, s2 / samples - mean * mean);
  const double scale = d * unit_ball_volume(d);
  return {scale * mean, scale * std::sqrt(var / samples)};
}

/// Monte Carlo estimate of the sphere surface measure of {y in S^{d-1} : inside(y)}.
template <class Pred>
estimate sphere_measure_monte_carlo(int d, Pred&& inside, long samples, std::uint64_t seed) {
  require(d >= 2 && samples >= 1, errc::domain_error, "need d >= 2 and at least one sample");
  rng gen(seed);
  long hits = 0;
  for (long i = 0; i < samples; ++i) {
    if (inside(uniform_sphere(gen, d))) ++hits;
  }
  const double p = static_cast<double>(hits) / samples;
  const double area = d * unit_ball_volume(d);
  return {area * p, area * std::sqrt(std::max(p * (1 - p), 1.0 / samples) / samples)};
}

}  // namespace cylpack
