#pragma once

// Static SVG drawings of planar disk families, separating lines and planks.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cylpack/falconer.hpp"
#include "cylpack/plank2d.hpp"

namespace cylpack {

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace detail

struct svg_scene {
  disk_family disks;
  std::vector<plank2d> planks;
  std::optional<separation_result> separator;
  std::optional<enclosing_circle> circle;
};

/// The view box is the circumcircle (or the disks' box) padded by 10%; y
/// points up.
inline std::string render_svg(const svg_scene& s, int pixels = 600) {
  check_family(s.disks);
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& d : s.disks) {
    x0 = std::min(x0, d.center(0) - d.radius);
    x1 = std::max(x1, d.center(0) + d.radius);
    y0 = std::min(y0, d.center(1) - d.radius);
    y1 = std::max(y1, d.center(1) + d.radius);
  }
  if (s.circle) {
    x0 = std::min(x0, s.circle->center(0) - s.circle->radius);
    x1 = std::max(x1, s.circle->center(0) + s.circle->radius);
    y0 = std::min(y0, s.circle->center(1) - s.circle->radius);
    y1 = std::max(y1, s.circle->center(1) + s.circle->radius);
  }
  const double pad = 0.1 * std::max(x1 - x0, y1 - y0);
  x0 -= pad;
  x1 += pad;
  y0 -= pad;
  y1 += pad;
  const double span = std::max(x1 - x0, y1 - y0);
  using detail::fmt;
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixels << "\" height=\"" << pixels
    << "\" viewBox=\"" << fmt(x0) << ' ' << fmt(-(y0 + span)) << ' ' << fmt(span) << ' ' << fmt(span) << "\">\n";
  o << "<g transform=\"scale(1,-1)\" stroke-width=\"" << fmt(span / 300) << "\">\n";
  const double far = 4 * span;
  for (const auto& p : s.planks) {
    const Eigen::Vector2d v = perp(p.u);
    const Eigen::Vector2d q[4] = {p.a * p.u - far * v, p.a * p.u + far * v, p.b * p.u + far * v, p.b * p.u - far * v};
    o << "<polygon fill=\"#4a90d9\" fill-opacity=\"0.25\" stroke=\"#2a5d8f\" points=\"";
    for (const auto& c : q) o << fmt(c(0)) << ',' << fmt(c(1)) << ' ';
    o << "\"/>\n";
  }
  for (const auto& d : s.disks) {
    o << "<circle cx=\"" << fmt(d.center(0)) << "\" cy=\"" << fmt(d.center(1)) << "\" r=\"" << fmt(d.radius)
      << "\" fill=\"#f0a040\" fill-opacity=\"0.4\" stroke=\"#8a5a10\"/>\n";
  }
  if (s.circle) {
    o << "<circle cx=\"" << fmt(s.circle->center(0)) << "\" cy=\"" << fmt(s.circle->center(1)) << "\" r=\""
      << fmt(s.circle->radius) << "\" fill=\"none\" stroke=\"#444\" stroke-dasharray=\"" << fmt(span / 80) << "\"/>\n";
  }
  if (s.separator && s.separator->separable) {
    const Eigen::Vector2d u = s.separator->u, v = perp(u);
    const Eigen::Vector2d a = s.separator->s * u - far * v, b = s.separator->s * u + far * v;
    o << "<line x1=\"" << fmt(a(0)) << "\" y1=\"" << fmt(a(1)) << "\" x2=\"" << fmt(b(0)) << "\" y2=\"" << fmt(b(1))
      << "\" stroke=\"#c02020\"/>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace cylpack
