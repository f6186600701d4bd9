#pragma once

// JSON forms of bodies, frames, cylinders, disk families, planks and
// reports. Doubles are written in shortest round-trip form, so reading a
// file back reproduces every value bit for bit.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "cylpack/cap_packing.hpp"
#include "cylpack/convex_body.hpp"
#include "cylpack/core/errors.hpp"
#include "cylpack/cylinder.hpp"
#include "cylpack/falconer.hpp"
#include "cylpack/frame.hpp"
#include "cylpack/multiplicity.hpp"
#include "cylpack/plank2d.hpp"
#include "cylpack/report.hpp"

namespace cylpack::io {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

/// Every malformed input surfaces as a ParseError.
template <class F>
auto parsing(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const error&) {
    throw;
  } catch (const std::exception& e) {
    throw error(errc::parse_error, e.what());
  }
}

inline json to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline Eigen::VectorXd vector_from(const json& j) {
  require(j.is_array(), errc::parse_error, "expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    require(j[i].is_number(), errc::parse_error, "expected a number");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

/// Matrices are written as a list of columns.
inline json columns_to_json(const Eigen::MatrixXd& m) {
  json a = json::array();
  for (Eigen::Index j = 0; j < m.cols(); ++j) a.push_back(to_json(m.col(j)));
  return a;
}

inline Eigen::MatrixXd columns_from(const json& j) {
  require(j.is_array() && !j.empty(), errc::parse_error, "expected a nonempty list of columns");
  const Eigen::VectorXd first = vector_from(j[0]);
  Eigen::MatrixXd m(first.size(), static_cast<Eigen::Index>(j.size()));
  for (std::size_t c = 0; c < j.size(); ++c) {
    const Eigen::VectorXd col = vector_from(j[c]);
    require(col.size() == first.size(), errc::parse_error, "columns differ in length");
    m.col(static_cast<Eigen::Index>(c)) = col;
  }
  return m;
}

inline json to_json(const convex_body& k) {
  if (k.is_ball()) return {{"kind", "ball"}, {"center", to_json(k.as_ball().center)}, {"radius", k.as_ball().radius}};
  if (k.is_ellipsoid()) {
    return {{"kind", "ellipsoid"}, {"center", to_json(k.as_ellipsoid().center())},
            {"shape", columns_to_json(k.as_ellipsoid().shape())}};
  }
  return {{"kind", "polytope"}, {"vertices", columns_to_json(k.as_polytope().points())}};
}

inline convex_body body_from(const json& j) {
  return parsing([&]() -> convex_body {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ball") return ball{vector_from(j.at("center")), j.at("radius").get<double>()};
    if (kind == "ellipsoid") return ellipsoid::from_shape(vector_from(j.at("center")), columns_from(j.at("shape")));
    if (kind == "polytope") return polytope(columns_from(j.at("vertices")));
    throw error(errc::parse_error, "unknown body kind '" + kind + "'");
  });
}

inline json to_json(const frame& f) { return columns_to_json(f.columns()); }

inline frame frame_from(const json& j) {
  return parsing([&] { return frame::from_columns(columns_from(j)); });
}

inline json to_json(const cylinder& c) {
  json base;
  if (const auto* p = std::get_if<polytope_base>(&c.base())) {
    base = {{"kind", "polytope"}, {"vertices", columns_to_json(p->vertices)}};
  } else if (const auto* d = std::get_if<disk_base>(&c.base())) {
    base = {{"kind", "disk"}, {"center", to_json(d->center)}, {"radius", d->radius}};
  } else {
    const auto& cap = std::get<cap_base>(c.base());
    base = {{"kind", "cap"}, {"pole", to_json(cap.pole)}, {"delta", cap.delta}, {"two_sided", cap.two_sided}};
  }
  return {{"k", c.k()}, {"frame", to_json(c.e())}, {"base", base}};
}

inline cylinder cylinder_from(const json& j) {
  return parsing([&]() -> cylinder {
    const frame e = frame_from(j.at("frame"));
    const json& b = j.at("base");
    const std::string kind = b.at("kind").get<std::string>();
    cylinder c;
    if (kind == "polytope") {
      c = cylinder(e, polytope_base{columns_from(b.at("vertices"))});
    } else if (kind == "disk") {
      c = cylinder(e, disk_base{vector_from(b.at("center")), b.at("radius").get<double>()});
    } else if (kind == "cap") {
      c = cylinder(e, cap_base{vector_from(b.at("pole")), b.at("delta").get<double>(), b.value("two_sided", true)});
    } else {
      throw error(errc::parse_error, "unknown base kind '" + kind + "'");
    }
    if (j.contains("k")) require(j.at("k").get<int>() == c.k(), errc::parse_error, "k disagrees with the frame");
    return c;
  });
}

inline json to_json(const std::vector<cylinder>& family) {
  json a = json::array();
  for (const auto& c : family) a.push_back(to_json(c));
  return a;
}

inline std::vector<cylinder> family_from(const json& j) {
  require(j.is_array(), errc::parse_error, "family must be an array");
  std::vector<cylinder> out;
  for (const auto& c : j) out.push_back(cylinder_from(c));
  return out;
}

inline json to_json(const disk_family& f) {
  json a = json::array();
  for (const auto& d : f) a.push_back({{"center", to_json(Eigen::VectorXd(d.center))}, {"radius", d.radius}});
  return a;
}

inline disk_family disks_from(const json& j) {
  return parsing([&] {
    require(j.is_array(), errc::parse_error, "disks must be an array");
    disk_family f;
    for (const auto& d : j) {
      const Eigen::VectorXd c = vector_from(d.at("center"));
      require(c.size() == 2, errc::parse_error, "disk centre must be planar");
      const double r = d.at("radius").get<double>();
      require(r > 0.0, errc::parse_error, "disk radius must be positive");
      f.push_back({Eigen::Vector2d(c), r});
    }
    return f;
  });
}

inline json to_json(const std::vector<plank2d>& planks) {
  json a = json::array();
  for (const auto& p : planks) a.push_back({{"u", to_json(Eigen::VectorXd(p.u))}, {"a", p.a}, {"b", p.b}});
  return a;
}

inline std::vector<plank2d> planks_from(const json& j) {
  return parsing([&] {
    require(j.is_array(), errc::parse_error, "planks must be an array");
    std::vector<plank2d> out;
    for (const auto& p : j) {
      const Eigen::VectorXd u = vector_from(p.at("u"));
      require(u.size() == 2, errc::parse_error, "plank normal must be planar");
      out.push_back(make_plank2d(Eigen::Vector2d(u), p.at("a").get<double>(), p.at("b").get<double>()));
    }
    return out;
  });
}

inline json to_json(const bound_report& r) {
  json extras = json::object();
  for (const auto& [key, value] : r.extras) extras[key] = value;
  json j = {{"theorem_id", r.theorem_id}, {"lhs", r.lhs},
            {"rhs", r.rhs},               {"direction", to_string(r.direction)},
            {"slack", r.slack},           {"tolerance", r.tolerance},
            {"probabilistic", r.probabilistic}, {"instance_digest", r.instance_digest},
            {"pass", r.pass},             {"extras", extras}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json to_json(const multiplicity_report& r) {
  json j = {{"samples", r.samples},         {"max_mult", r.max_mult},     {"min_mult", r.min_mult},
            {"max_closed", r.max_closed},   {"min_interior", r.min_interior},
            {"coverage_fraction", r.coverage_fraction}, {"seed", r.seed}};
  j["witness_max"] = r.witness_max.size() ? to_json(r.witness_max) : json(nullptr);
  j["witness_min"] = r.witness_min.size() ? to_json(r.witness_min) : json(nullptr);
  return j;
}

inline json to_json(const cap_chain_report& r) {
  return {{"d", r.d},
          {"k", r.k},
          {"delta", r.delta},
          {"seed", r.seed},
          {"metric", r.metric},
          {"two_sided", r.two_sided},
          {"n", r.n},
          {"maximal", r.maximal},
          {"uncovered_trials", r.uncovered_trials},
          {"min_separation", r.min_separation},
          {"caps_disjoint", r.caps_disjoint},
          {"cap_fraction_2delta", r.cap_fraction_2delta},
          {"ratio_form_fraction", r.ratio_form_fraction},
          {"counting_bound", r.counting_bound},
          {"link_counting", r.link_counting},
          {"counting_bound_one_sided", r.counting_bound_one_sided},
          {"link_counting_one_sided", r.link_counting_one_sided},
          {"sum_crv", r.sum_crv},
          {"sum_crv_direct", r.sum_crv_direct},
          {"chain_rhs", r.chain_rhs},
          {"link_chain", r.link_chain},
          {"sandwich_rhs", r.sandwich_rhs},
          {"link_sandwich", r.link_sandwich},
          {"threshold", r.threshold},
          {"empirical_constant", r.empirical_constant},
          {"link_packing_upper", r.link_packing_upper},
          {"maxslice_upper", r.maxslice_upper},
          {"link_maxslice_upper", r.link_maxslice_upper},
          {"packing_verified", r.packing_verified},
          {"packing_samples", r.packing_samples},
          {"max_multiplicity", r.max_multiplicity},
          {"all_links", r.all_links}};
}

/// Stable text form used for digests and byte-identical outputs.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace cylpack::io
