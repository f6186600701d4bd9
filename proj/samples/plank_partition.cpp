// Cuts a random ellipse into parallel planks, repeats the cut r times and
// checks that the relative widths sum to exactly r, from both sides.

#include <cstdio>

#include "cylpack/cylpack.hpp"

using namespace cylpack;

int main() {
  rng gen(2024);
  const convex_body k = random_ellipsoid(2, gen);
  for (int r = 1; r <= 3; ++r) {
    const auto family = plank_partition(k, uniform_sphere(gen, 2), 6, r, 17);
    const auto up = check_packing_upper_ellipsoid(k, family, r);
    const auto low = check_covering_lower(k, family, r, covering_mode::ellipsoid_k1);
    std::printf("r=%d  planks=%zu  sum=%.12f  packing %s  covering %s\n", r, family.size(), up.lhs,
                up.pass ? "ok" : "FAIL", low.pass ? "ok" : "FAIL");
  }
}
