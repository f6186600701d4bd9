#pragma once

// Command implementations behind the cylpack executable: instance
// construction, verification, bound tables and the planar disk suite.
// Each command returns its exit code and the exact bytes to emit.

#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cylpack/bounds.hpp"
#include "cylpack/cap_packing.hpp"
#include "cylpack/core/digest.hpp"
#include "cylpack/core/errors.hpp"
#include "cylpack/core/parallel.hpp"
#include "cylpack/falconer.hpp"
#include "cylpack/instances.hpp"
#include "cylpack/io.hpp"
#include "cylpack/plank2d.hpp"
#include "cylpack/svg.hpp"

namespace cylpack::app {

using json = nlohmann::json;

enum exit_code { ok = 0, failed = 1, usage = 2 };

struct run_config {
  int dim = 2;
  int k = 1;
  int r = 1;
  int n = 5;
  double delta = 0.3;
  long samples = 20000;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string format = "json";
  std::string theorem;  // empty means every applicable theorem
  std::string kind;     // construct: which generator
  bool ellipsoid = false;
};

struct result {
  int code = ok;
  std::string output;
};

inline json error_object(errc code, const std::string& message) {
  return {{"schema_version", io::schema_version}, {"error", {{"code", to_string(code)}, {"message", message}}}};
}

inline result error_result(const error& e) {
  const int code = e.code() == errc::parse_error || e.code() == errc::domain_error ||
                           e.code() == errc::dimension_mismatch || e.code() == errc::unsupported_dimension
                       ? usage
                       : failed;
  return {code, io::dump(error_object(e.code(), e.message()))};
}

inline json parse_text(const std::string& text) {
  return io::parsing([&] { return json::parse(text); });
}

inline std::string instance_digest(const json& instance) { return digest_hex(instance.dump()); }

inline check_options options_of(const run_config& cfg) {
  check_options o;
  o.samples = cfg.samples;
  o.seed = derive_seed(cfg.seed, 0x7665);
  return o;
}

inline std::string instance_type(const json& j) {
  return io::parsing([&] {
    require(j.is_object(), errc::parse_error, "instance must be a JSON object");
    const int v = j.at("schema_version").get<int>();
    require(v == io::schema_version, errc::parse_error, "unsupported schema_version " + std::to_string(v));
    return j.at("type").get<std::string>();
  });
}

// ---------------------------------------------------------------- construct

inline json cylinder_instance(const convex_body& k, const std::vector<cylinder>& family, int r,
                              const std::string& mode) {
  return {{"schema_version", io::schema_version}, {"type", "cylinder_instance"}, {"body", io::to_json(k)},
          {"family", io::to_json(family)},        {"r", r},                      {"mode", mode}};
}

inline json construct(const run_config& cfg) {
  const std::string& kind = cfg.kind;
  json out;
  if (kind == "cap") {
    cap_family fam;
    const cap_chain_report rep = theorem_example_report(cfg.dim, cfg.k, cfg.delta, cfg.seed, {}, &fam);
    out = cylinder_instance(convex_body::unit_ball(cfg.dim), fam.cylinders, 1, "packing");
    out["construction"] = {{"kind", "cap"}, {"report", io::to_json(rep)}};
  } else if (kind == "plank-partition") {
    require(cfg.dim >= 2 && cfg.n >= 1 && cfg.r >= 1, errc::domain_error, "need dim >= 2, n >= 1, r >= 1");
    rng gen(cfg.seed);
    const convex_body k = cfg.ellipsoid ? random_ellipsoid(cfg.dim, gen) : convex_body::unit_ball(cfg.dim);
    Eigen::VectorXd u = Eigen::VectorXd::Unit(cfg.dim, 0);
    if (cfg.ellipsoid) u = uniform_sphere(gen, cfg.dim);
    out = cylinder_instance(k, plank_partition(k, u, cfg.n, cfg.r, cfg.ellipsoid ? derive_seed(cfg.seed, 1) : 0),
                            cfg.r, "both");
  } else if (kind == "axis-packing") {
    require(cfg.dim >= 2 && cfg.k >= 1 && cfg.k < cfg.dim, errc::domain_error, "need 1 <= k < dim");
    axis_packing_options opt;
    opt.allow_disks = !cfg.ellipsoid;
    auto family = random_axis_packing(cfg.dim, cfg.k, cfg.r, cfg.seed, opt);
    convex_body k = convex_body::unit_ball(cfg.dim);
    if (cfg.ellipsoid) {
      rng gen(derive_seed(cfg.seed, 1));
      const Eigen::MatrixXd t = random_linear_map(cfg.dim, gen);
      Eigen::VectorXd shift(cfg.dim);
      for (int i = 0; i < cfg.dim; ++i) shift(i) = uniform(gen, -1.0, 1.0);
      k = transform(k, t, shift);
      family = transform_family(family, t, shift);
    }
    out = cylinder_instance(k, family, cfg.r, "packing");
  } else if (kind == "tile-covering") {
    rng gen(cfg.seed);
    const convex_body k = cfg.ellipsoid ? random_ellipsoid(cfg.dim, gen) : random_polytope(cfg.dim, cfg.n + cfg.dim, gen);
    out = cylinder_instance(k, random_tile_covering(k, cfg.k, cfg.r, derive_seed(cfg.seed, 1)), cfg.r, "covering");
  } else if (kind == "polygon-strips") {
    rng gen(cfg.seed);
    const convex_body k = random_polytope(2, std::max(3, cfg.n), gen);
    std::vector<cylinder> family;
    for (const auto& p : random_plank_packing_2d(region_of(k), cfg.r, 40, derive_seed(cfg.seed, 1))) {
      family.push_back(to_cylinder(p));
    }
    require(!family.empty(), errc::no_convergence, "no strip fitted");
    out = cylinder_instance(k, family, cfg.r, "packing");
  } else if (kind == "polytope-body") {
    rng gen(cfg.seed);
    const convex_body k = random_polytope(cfg.dim, std::max(cfg.dim + 1, cfg.n), gen);
    json frames = json::array();
    for (int m = 1; m < cfg.dim; ++m) {
      Eigen::MatrixXd g(cfg.dim, m);
      for (int j = 0; j < m; ++j) g.col(j) = gaussian_vector(gen, cfg.dim);
      frames.push_back(io::to_json(orthonormalize(g)));
    }
    out = {{"schema_version", io::schema_version}, {"type", "body_instance"}, {"body", io::to_json(k)}, {"frames", frames}};
  } else if (kind == "ns-family") {
    const disk_family f = random_ns_family(cfg.n, cfg.seed);
    const auto planks = random_plank_packing_2d(region_of(f), cfg.r, 40, derive_seed(cfg.seed, 1));
    out = {{"schema_version", io::schema_version}, {"type", "falconer_instance"}, {"disks", io::to_json(f)},
           {"planks", io::to_json(planks)},        {"r", cfg.r}};
  } else {
    throw error(errc::domain_error, "unknown construction kind '" + kind + "'");
  }
  out["seed"] = cfg.seed;
  return out;
}

inline result cmd_construct(const run_config& cfg) {
  try {
    return {ok, io::dump(construct(cfg))};
  } catch (const error& e) {
    return error_result(e);
  }
}

// ------------------------------------------------------------------ checks

struct loaded_cylinders {
  convex_body body;
  std::vector<cylinder> family;
  int r = 1;
  std::string mode;
};

inline loaded_cylinders load_cylinders(const json& j) {
  return io::parsing([&] {
    loaded_cylinders l;
    l.body = io::body_from(j.at("body"));
    l.family = io::family_from(j.at("family"));
    l.r = j.at("r").get<int>();
    l.mode = j.value("mode", "packing");
    require(l.r >= 1, errc::parse_error, "r must be positive");
    require(l.mode == "packing" || l.mode == "covering" || l.mode == "both", errc::parse_error,
            "mode must be packing, covering or both");
    require(!l.family.empty(), errc::parse_error, "family is empty");
    for (const auto& c : l.family) {
      require(c.ambient_dim() == l.body.dim(), errc::parse_error, "cylinder and body dimensions differ");
    }
    return l;
  });
}

/// Runs one checker, turning a failed precondition into a failing row.
template <class F>
bound_report guarded(const std::string& id, F&& f) {
  try {
    return f();
  } catch (const error& e) {
    bound_report r;
    r.theorem_id = id;
    r.pass = false;
    r.note = e.what();
    return r;
  }
}

inline std::vector<bound_report> cylinder_bounds(const loaded_cylinders& l, const run_config& cfg) {
  const check_options opt = options_of(cfg);
  const int k = common_codim(l.family);
  const int d = l.body.dim();
  std::vector<bound_report> rows;
  const bool packing = l.mode != "covering", covering = l.mode != "packing";
  if (packing) {
    if (l.body.is_ellipsoidal() && k <= 2) {
      rows.push_back(guarded("packing_upper_ellipsoid", [&] { return check_packing_upper_ellipsoid(l.body, l.family, l.r, opt); }));
    }
    if (k <= 2 && (l.body.is_ellipsoidal() || l.body.is_polytope())) {
      rows.push_back(guarded("packing_scaled", [&] { return check_packing_scaled(l.body, l.family, l.r, opt); }));
    }
    if (k <= 3) rows.push_back(guarded("covcylgen", [&] { return check_covcylgen(l.body, l.family, l.r, opt); }));
    if (k == 1 && d <= 4) rows.push_back(guarded("pack1cyl", [&] { return check_pack1cyl(l.body, l.family, l.r, opt); }));
  }
  if (covering) {
    rows.push_back(guarded("covering_lower", [&] {
      return check_covering_lower(l.body, l.family, l.r, covering_mode::general, opt);
    }));
    if (l.body.is_ellipsoidal() && k == 1) {
      rows.push_back(guarded("covering_lower_ellipsoid", [&] {
        return check_covering_lower(l.body, l.family, l.r, covering_mode::ellipsoid_k1, opt);
      }));
    }
  }
  return rows;
}

inline std::vector<bound_report> cap_rows(const json& instance, const loaded_cylinders& l) {
  std::vector<bound_report> rows;
  if (!instance.contains("construction") || instance["construction"].value("kind", "") != "cap") return rows;
  const json& rep = instance["construction"]["report"];
  const double sum = sum_crv(l.body, l.family).value;
  bound_report chain = make_report("cap_chain", sum, rep.at("chain_rhs").get<double>(), relation::ge);
  chain.extras = {{"n", rep.at("n").get<double>()},
                  {"counting_bound", rep.at("counting_bound").get<double>()},
                  {"empirical_constant", rep.at("empirical_constant").get<double>()}};
  rows.push_back(chain);
  bound_report counting =
      make_report("cap_counting", rep.at("n").get<double>(), rep.at("counting_bound").get<double>(), relation::ge);
  rows.push_back(counting);
  return rows;
}

inline std::vector<bound_report> body_bounds(const json& j, const run_config& cfg) {
  const convex_body k = io::body_from(j.at("body"));
  std::vector<frame> frames;
  io::parsing([&] {
    for (const auto& f : j.at("frames")) frames.push_back(io::frame_from(f));
    return 0;
  });
  std::vector<bound_report> rows;
  const check_options opt = options_of(cfg);
  for (const auto& e : frames) {
    require(e.ambient_dim() == k.dim(), errc::parse_error, "frame and body dimensions differ");
    try {
      const auto rs = check_rogers_shephard(k, e, opt);
      rows.push_back(rs.upper);
      rows.push_back(rs.lower);
    } catch (const error& err) {
      rows.push_back(guarded("rogers_shephard_upper", [&]() -> bound_report { throw err; }));
    }
  }
  if (k.is_polytope() && (k.dim() == 2 || k.dim() == 3)) {
    rows.push_back(guarded("cauchy_formula", [&] { return check_cauchy_formula(k); }));
  }
  return rows;
}

inline std::vector<bound_report> falconer_bounds(const json& j, const run_config& cfg) {
  const disk_family f = io::disks_from(j.at("disks"));
  const auto planks = io::planks_from(j.value("planks", json::array()));
  const int r = io::parsing([&] { return j.value("r", 1); });
  std::vector<bound_report> rows;
  try {
    const auto df = verify_dual_falconer(f, planks, r);
    rows.push_back(df.widths);
    rows.push_back(df.circumradius);
  } catch (const error& e) {
    rows.push_back(guarded("dual_falconer", [&]() -> bound_report { throw e; }));
  }
  rows.push_back(guarded("ridge_estimate", [&] {
    return ridge_bound_check(f, planks, r, cfg.samples, derive_seed(cfg.seed, 0x7269));
  }));
  rows.push_back(guarded("inf_estimate", [&] { return inf_estimate_check(f); }));
  return rows;
}

/// Every applicable checker for one instance, in a fixed order.
inline std::vector<bound_report> instance_bounds(const json& j, const run_config& cfg) {
  const std::string type = instance_type(j);
  std::vector<bound_report> rows;
  if (type == "cylinder_instance") {
    const loaded_cylinders l = load_cylinders(j);
    rows = cylinder_bounds(l, cfg);
    for (auto& row : cap_rows(j, l)) rows.push_back(row);
  } else if (type == "body_instance") {
    rows = body_bounds(j, cfg);
  } else if (type == "falconer_instance") {
    rows = falconer_bounds(j, cfg);
  } else {
    throw error(errc::parse_error, "unknown instance type '" + type + "'");
  }
  const std::string digest = instance_digest(j);
  for (auto& row : rows) row.instance_digest = digest;
  return rows;
}

// ------------------------------------------------------------------- verify

inline result cmd_verify(const std::string& text, const run_config& cfg) {
  try {
    const json j = parse_text(text);
    const std::string type = instance_type(j);
    json rep = {{"schema_version", io::schema_version}, {"command", "verify"}, {"type", type},
                {"instance_digest", instance_digest(j)}, {"seed", cfg.seed}};
    bool pass = true;
    if (type == "cylinder_instance") {
      const loaded_cylinders l = load_cylinders(j);
      const check_options opt = options_of(cfg);
      json checks = json::array();
      for (const bool covering : {false, true}) {
        if ((covering && l.mode == "packing") || (!covering && l.mode == "covering")) continue;
        const packing_check pc = check_multiplicity(l.body, l.family, l.r, covering, opt);
        json c = {{"mode", covering ? "covering" : "packing"}, {"r", l.r}, {"exact", pc.exact},
                  {"max_mult", pc.max_mult}, {"min_cover", pc.min_cover}, {"pass", pc.pass}};
        if (!pc.pass) {
          // Witness from the sampler, or from the exact planar arrangement.
          if (auto planks = as_planks_2d(l.family)) {
            const auto m = exact_max_multiplicity(region_of(l.body), *planks);
            c["witness"] = io::to_json(Eigen::VectorXd(covering ? m.witness_min : m.witness));
          } else {
            const auto v = estimate_multiplicity(l.body, l.family, opt.samples, opt.seed);
            c["witness"] = io::to_json(covering ? v.witness_min : v.witness_max);
          }
        }
        pass = pass && pc.pass;
        checks.push_back(c);
      }
      rep["multiplicity"] = checks;
    }
    json rows = json::array();
    if (pass) {
      for (const auto& row : instance_bounds(j, cfg)) {
        pass = pass && row.pass;
        rows.push_back(io::to_json(row));
      }
    }
    rep["bounds"] = rows;
    rep["pass"] = pass;
    return {pass ? ok : failed, io::dump(rep)};
  } catch (const error& e) {
    return error_result(e);
  }
}

// ------------------------------------------------------------------- bounds

inline std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline result cmd_bounds(const std::vector<std::pair<std::string, std::string>>& instances, const run_config& cfg) {
  if (instances.empty()) return {usage, io::dump(error_object(errc::parse_error, "no instance files given"))};
  try {
    std::vector<json> parsed;
    for (const auto& [name, text] : instances) parsed.push_back(parse_text(text));
    std::vector<std::vector<bound_report>> rows(parsed.size());
    parallel_for(parsed.size(), [&](std::size_t i) { rows[i] = instance_bounds(parsed[i], cfg); });
    bool pass = true;
    json table = json::array();
    std::string csv = "instance,theorem_id,lhs,rhs,direction,slack,tolerance,probabilistic,pass\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (const auto& row : rows[i]) {
        if (!cfg.theorem.empty() && row.theorem_id != cfg.theorem) continue;
        pass = pass && row.pass;
        json jr = io::to_json(row);
        jr["instance"] = instances[i].first;
        table.push_back(jr);
        csv += instances[i].first + "," + row.theorem_id + "," + csv_number(row.lhs) + "," + csv_number(row.rhs) + "," +
               to_string(row.direction) + "," + csv_number(row.slack) + "," + csv_number(row.tolerance) + "," +
               (row.probabilistic ? "1" : "0") + "," + (row.pass ? "1" : "0") + "\n";
      }
    }
    if (cfg.format == "csv") return {pass ? ok : failed, csv};
    json out = {{"schema_version", io::schema_version}, {"command", "bounds"}, {"seed", cfg.seed},
                {"rows", table}, {"pass", pass}};
    return {pass ? ok : failed, io::dump(out)};
  } catch (const error& e) {
    return error_result(e);
  }
}

// ----------------------------------------------------------------- falconer

/// Planar disk report: separability with a separating line, NS-diameter,
/// circumradius, density mass and, when planks are present, the width
/// bounds. Optionally also an SVG drawing.
inline result cmd_falconer(const std::string& text, const run_config& cfg, std::string* svg = nullptr) {
  try {
    const json j = parse_text(text);
    const disk_family f = io::disks_from(j.at("disks"));
    const auto planks = io::planks_from(j.value("planks", json::array()));
    const separation_result sep = is_separable(f);
    const enclosing_circle c = circumradius(f);
    json rep = {{"schema_version", io::schema_version},
                {"command", "falconer"},
                {"instance_digest", instance_digest(j)},
                {"separable", sep.separable},
                {"ns_diameter", ns_diameter(f)},
                {"circumradius", {{"center", io::to_json(Eigen::VectorXd(c.center))}, {"radius", c.radius},
                                  {"residual", c.residual}, {"support", c.support}}},
                {"total_mass", total_mass(f)},
                {"total_mass_per_radius", total_mass(f, density_mode::per_radius)}};
    if (sep.separable) {
      rep["separating_line"] = {{"u", io::to_json(Eigen::VectorXd(sep.u))}, {"s", sep.s}};
    }
    bool pass = true;
    if (!sep.separable) {
      json rows = json::array();
      for (const auto& row : falconer_bounds(j, cfg)) {
        pass = pass && row.pass;
        rows.push_back(io::to_json(row));
      }
      rep["bounds"] = rows;
    }
    rep["pass"] = pass;
    if (svg) *svg = render_svg({f, planks, sep, c});
    return {pass ? ok : failed, io::dump(rep)};
  } catch (const error& e) {
    return error_result(e);
  }
}

}  // namespace cylpack::app
