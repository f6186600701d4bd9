// A chain of disks that no line separates, a random plank packing of its
// hull, and the width bound against the summed diameters. Writes an SVG.

#include <cstdio>
#include <fstream>

#include "cylpack/cylpack.hpp"
#include "cylpack/svg.hpp"

using namespace cylpack;

int main(int argc, char** argv) {
  const disk_family f = random_ns_family(5, 42);
  const auto planks = random_plank_packing_2d(region_of(f), 2, 40, 43);
  const auto rep = verify_dual_falconer(f, planks, 2);
  std::printf("disks=%zu planks=%zu  widths %.6f <= %.6f  (%s)\n", f.size(), planks.size(), rep.widths.lhs,
              rep.widths.rhs, rep.widths.pass ? "ok" : "FAIL");
  std::printf("circumradius %.6f  2R <= diam: %s\n", circumradius(f).radius, rep.circumradius.pass ? "ok" : "FAIL");
  if (argc > 1) {
    std::ofstream(argv[1]) << render_svg({.disks = f, .planks = planks, .circle = circumradius(f)});
    std::printf("wrote %s\n", argv[1]);
  }
}
