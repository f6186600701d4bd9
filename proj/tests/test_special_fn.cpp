#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cylpack/core/errors.hpp"
#include "cylpack/special_functions.hpp"
#include "oracles.hpp"

using namespace cylpack;

namespace {

constexpr double pi = std::numbers::pi;

// Composite Simpson rule on cos^n over [pi/2 - delta, pi/2], a route that
// shares nothing with either library evaluation.
double simpson_cos_power(int n, double delta, int panels = 20000) {
  const double a = pi / 2 - delta, h = delta / panels;
  double s = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::pow(std::cos(a + i * h), n);
  }
  return s * h / 3.0;
}

// Simpson on sin^n over [0, delta]; the integrand scales with the value, so
// this keeps relative accuracy when the integral is tiny.
double simpson_sin_power(int n, double delta, int panels = 20000) {
  const double h = delta / panels;
  double s = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::pow(std::sin(i * h), n);
  }
  return s * h / 3.0;
}

}  // namespace

TEST(CosPower, ConstantIntegrand) { EXPECT_NEAR(cos_power_integral(0, 0.5), 0.5, 1e-15); }

TEST(CosPower, FirstPower) { EXPECT_NEAR(cos_power_integral(1, pi / 3), 0.5, 1e-12); }

TEST(CosPower, SecondPowerClosedForm) {
  EXPECT_NEAR(cos_power_integral(2, 0.7), 0.35 - std::sin(1.4) / 4, 1e-12);
}

TEST(CosPower, MatchesSimpson) {
  for (int n : {3, 7, 12, 25}) {
    for (double delta : {0.1, 0.6, 1.2}) {
      EXPECT_NEAR(cos_power_integral(n, delta), simpson_cos_power(n, delta), 1e-12) << n << " " << delta;
    }
  }
}

TEST(CosPower, RelativeAccuracyForTinyValues) {
  for (int n : {20, 40, 60}) {
    for (double delta : {0.01, 0.05, 0.2}) {
      const double oracle = simpson_sin_power(n, delta);
      EXPECT_NEAR(cos_power_integral(n, delta) / oracle, 1.0, 1e-10) << n << " " << delta;
    }
  }
}

TEST(CosPower, QuadratureAgreesWithRecurrence) {
  for (int n = 0; n <= 60; ++n) {
    for (double delta = 0.01; delta < 1.5705; delta += 0.0731) {
      EXPECT_NEAR(cos_power_integral(n, delta), cos_power_integral_recurrence(n, delta), 1e-10) << n << " " << delta;
    }
  }
}

TEST(CosPower, RangeAndMonotoneInN) {
  for (double delta : {0.05, 0.4, 1.1}) {
    for (int n = 0; n < 30; ++n) {
      const double v = cos_power_integral(n, delta);
      EXPECT_GT(v, 0.0);
      EXPECT_LE(v, delta + 1e-15);
      EXPECT_LT(cos_power_integral(n + 1, delta), v);
    }
  }
}

TEST(CosPower, DomainErrors) {
  EXPECT_THROW(cos_power_integral(-1, 0.3), error);
  EXPECT_THROW(cos_power_integral(2, 0.0), error);
  EXPECT_THROW(cos_power_integral(2, 2.0), error);
  EXPECT_THROW(lemma_sandwich(0, 0.3), error);
  EXPECT_THROW(cap_volume(0, 0.3), error);
}

TEST(Sandwich, QuarterPiFirstPower) {
  const auto b = lemma_sandwich(1, pi / 4);
  const double s = std::sqrt(2.0) / 2;
  EXPECT_NEAR(b.upper, pi / 4 * s, 1e-15);
  EXPECT_NEAR(b.lower, pi / 4 * s / (2 * std::numbers::e), 1e-15);
  const double v = 1 - std::cos(pi / 4);
  EXPECT_NEAR(cos_power_integral(1, pi / 4), 0.29289321881345, 1e-12);
  EXPECT_LE(b.lower, v);
  EXPECT_LE(v, b.upper);
}

TEST(Sandwich, TenthPower) {
  const auto b = lemma_sandwich(10, 0.3);
  const double v = cos_power_integral(10, 0.3);
  EXPECT_LT(b.lower, v);
  EXPECT_LT(v, b.upper);
}

TEST(Sandwich, HoldsStrictlyOnGrid) {
  for (int n = 1; n <= 30; ++n) {
    for (int i = 1; i <= 150; ++i) {
      const double delta = 0.01 * i;
      const auto b = lemma_sandwich(n, delta);
      const double v = cos_power_integral(n, delta);
      EXPECT_LT(b.lower, v) << n << " " << delta;
      EXPECT_LT(v, b.upper) << n << " " << delta;
    }
  }
}

TEST(Sandwich, BetaChoice) {
  for (int n = 1; n <= 50; ++n) {
    EXPECT_GE(sandwich_beta_factor(n), 1.0 / (std::numbers::e * (n + 1))) << n;
  }
}

TEST(BallVolume, Recurrence) {
  for (int m = 0; m <= 20; ++m) EXPECT_NEAR(unit_ball_volume(m), oracle::ball_volume(m), 1e-12 * oracle::ball_volume(m));
}

TEST(Binomial, Pascal) {
  for (int n = 1; n <= 20; ++n) {
    for (int k = 1; k < n; ++k) EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
  }
}

TEST(CapVolume, Segment) {
  for (double delta : {0.1, 0.7, 1.3}) EXPECT_NEAR(cap_volume(1, delta), 1 - std::cos(delta), 1e-12);
}

TEST(CapVolume, HalfDiskLimit) { EXPECT_NEAR(cap_volume(2, pi / 2 - 1e-9), pi / 2, 1e-8); }

TEST(CapVolume, HemisphereAdditivity) {
  for (int m = 1; m <= 8; ++m) EXPECT_NEAR(2 * cap_volume(m, pi / 2), unit_ball_volume(m), 1e-9);
}

TEST(CapVolume, MonteCarloThreeBall) {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double c = std::cos(0.4);
  long inside = 0, hits = 0;
  while (inside < 1000000) {
    const double x = u(gen), y = u(gen), z = u(gen);
    if (x * x + y * y + z * z > 1) continue;
    ++inside;
    if (x >= c) ++hits;
  }
  const double p = static_cast<double>(hits) / inside;
  const double sigma = std::sqrt(p * (1 - p) / inside) * unit_ball_volume(3);
  EXPECT_NEAR(cap_volume(3, 0.4), p * unit_ball_volume(3), 3 * sigma);
}

TEST(CapFraction, CircleArc) {
  for (double delta : {0.2, 0.9, 1.5}) EXPECT_NEAR(spherical_cap_fraction(2, delta), delta / pi, 1e-12);
}

TEST(CapFraction, Hemisphere) {
  for (int d = 2; d <= 9; ++d) EXPECT_NEAR(spherical_cap_fraction(d, pi / 2), 0.5, 1e-12);
}

TEST(CapFraction, AntipodalDoubles) {
  EXPECT_NEAR(spherical_cap_fraction(5, 0.3, true), 2 * spherical_cap_fraction(5, 0.3), 1e-15);
}

TEST(CapFraction, MonteCarloFiveSphere) {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> g;
  const long n = 1000000;
  const double c = std::cos(0.6);
  long hits = 0;
  for (long i = 0; i < n; ++i) {
    double v[5], s = 0;
    for (double& x : v) {
      x = g(gen);
      s += x * x;
    }
    if (v[0] / std::sqrt(s) >= c) ++hits;
  }
  const double p = static_cast<double>(hits) / n;
  EXPECT_NEAR(spherical_cap_fraction(5, 0.6), p, 3 * std::sqrt(p * (1 - p) / n));
}

TEST(CapFraction, RatioFormAgrees) {
  for (int d = 4; d <= 12; ++d) {
    for (double delta : {0.1, 0.5, 1.0}) {
      EXPECT_NEAR(spherical_cap_fraction_ratio_form(d, delta), spherical_cap_fraction(d, delta), 1e-12);
      EXPECT_NEAR(spherical_cap_fraction_ratio_form(d, delta, true), spherical_cap_fraction(d, delta, true), 1e-12);
    }
  }
  EXPECT_THROW(spherical_cap_fraction_ratio_form(3, 0.2), error);
}

TEST(CapFraction, MonotoneInAngleAndDimension) {
  for (int d = 2; d <= 10; ++d) {
    for (double delta = 0.05; delta < 1.5; delta += 0.05) {
      EXPECT_LT(spherical_cap_fraction(d, delta), spherical_cap_fraction(d, delta + 0.05));
      if (delta < pi / 2 - 1e-9) EXPECT_GT(spherical_cap_fraction(d, delta), spherical_cap_fraction(d + 1, delta));
    }
  }
}
