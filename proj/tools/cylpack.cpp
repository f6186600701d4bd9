// cylpack: construct, verify and tabulate cylinder packing/covering instances.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cylpack/app.hpp"

namespace {

using cylpack::app::result;

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  return true;
}

int emit(const result& r, const std::string& out) {
  if (out.empty()) {
    std::cout << r.output;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cout << cylpack::io::dump(cylpack::app::error_object(cylpack::errc::parse_error, "cannot write " + out));
      return cylpack::app::usage;
    }
    f << r.output;
  }
  return r.code;
}

result missing(const std::string& path) {
  return {cylpack::app::usage,
          cylpack::io::dump(cylpack::app::error_object(cylpack::errc::parse_error, "cannot read " + path))};
}

}  // namespace

int main(int argc, char** argv) {
  cylpack::app::run_config cfg;
  std::string out, svg_out;
  std::vector<std::string> inputs;

  CLI::App app{"Cylinder packing and covering laboratory"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--dim", cfg.dim, "ambient dimension");
    sub->add_option("--k", cfg.k, "codimension of the cylinders");
    sub->add_option("--r", cfg.r, "multiplicity");
    sub->add_option("--delta", cfg.delta, "cap angle");
    sub->add_option("--samples", cfg.samples, "Monte Carlo samples");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--tol", cfg.tol, "exact tolerance");
    sub->add_option("--out", out, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--theorem", cfg.theorem, "only report this theorem id");
  };

  auto* construct = app.add_subcommand("construct", "generate an instance");
  common(construct);
  construct->add_option("--n", cfg.n, "number of pieces");
  construct->add_flag("--ellipsoid", cfg.ellipsoid, "use a random ellipsoid body");
  auto kinds = construct->add_option_group("kind");
  const std::pair<const char*, const char*> kind_flags[] = {
      {"cap", "cap cylinders over a separated set on the sphere"},
      {"plank-partition", "parallel planks tiling the body, repeated r times"},
      {"axis-packing", "random r-fold packing of the ball"},
      {"tile-covering", "r-fold covering by box-based cylinders"},
      {"polygon-strips", "random strip packing of a polygon"},
      {"polytope-body", "random polytope with frames"},
      {"ns-family", "non-separable disk family"},
  };
  for (const auto& [kind, help] : kind_flags) {
    kinds->add_flag_callback(std::string("--") + kind, [&cfg, kind] { cfg.kind = kind; }, help);
  }
  kinds->require_option(1);

  auto* verify = app.add_subcommand("verify", "check one instance");
  common(verify);
  verify->add_option("input", inputs, "instance file")->required()->expected(1);

  auto* bounds = app.add_subcommand("bounds", "tabulate bound reports");
  common(bounds);
  bounds->add_option("inputs", inputs, "instance files");

  auto* falconer = app.add_subcommand("falconer", "planar disk family report");
  common(falconer);
  falconer->add_option("input", inputs, "disk family file")->required()->expected(1);
  falconer->add_option("--svg", svg_out, "write an SVG drawing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cout << cylpack::io::dump(cylpack::app::error_object(cylpack::errc::parse_error, e.what()));
    return cylpack::app::usage;
  }

  try {
    if (*construct) return emit(cylpack::app::cmd_construct(cfg), out);
    if (*bounds) {
      std::vector<std::pair<std::string, std::string>> files;
      for (const auto& path : inputs) {
        std::string text;
        if (!read_file(path, text)) return emit(missing(path), out);
        files.emplace_back(path.substr(path.find_last_of('/') + 1), text);
      }
      return emit(cylpack::app::cmd_bounds(files, cfg), out);
    }
    std::string text;
    if (!read_file(inputs.front(), text)) return emit(missing(inputs.front()), out);
    if (*verify) return emit(cylpack::app::cmd_verify(text, cfg), out);
    std::string svg;
    const result r = cylpack::app::cmd_falconer(text, cfg, svg_out.empty() ? nullptr : &svg);
    if (!svg_out.empty() && r.code != cylpack::app::usage) std::ofstream(svg_out, std::ios::binary) << svg;
    return emit(r, out);
  } catch (const std::exception& e) {
    std::cout << cylpack::io::dump(cylpack::app::error_object(cylpack::errc::domain_error, e.what()));
    return cylpack::app::failed;
  }
}
