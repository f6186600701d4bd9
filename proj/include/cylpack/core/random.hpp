#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace cylpack {

using rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for block `stream` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

inline double uniform01(rng& gen) { return std::uniform_real_distribution<double>(0.0, 1.0)(gen); }

inline double uniform(rng& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

inline Eigen::VectorXd gaussian_vector(rng& gen, int d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v(i) = normal(gen);
  return v;
}

inline Eigen::VectorXd uniform_sphere(rng& gen, int d) {
  for (;;) {
    Eigen::VectorXd v = gaussian_vector(gen, d);
    const double n = v.norm();
    if (n > 1e-300) return v / n;
  }
}

inline Eigen::VectorXd uniform_ball(rng& gen, int d) {
  const double radius = std::pow(uniform01(gen), 1.0 / d);
  return radius * uniform_sphere(gen, d);
}

}  // namespace cylpack
