// Builds the cap-cylinder packing of the unit ball in a few dimensions and
// prints the lower-bound chain together with the empirical constant.

#include <cstdio>

#include "cylpack/cylpack.hpp"

using namespace cylpack;

int main() {
  std::printf("%3s %2s %5s %6s %10s %10s %9s %s\n", "d", "k", "delta", "N", "sum_crv", "chain", "constant", "links");
  for (int d : {4, 5}) {
    for (int k : {1, 2}) {
      const auto r = theorem_example_report(d, k, 0.3, 7, {.verify_samples = 20000});
      std::printf("%3d %2d %5.2f %6d %10.6f %10.6f %9.4f %s\n", d, k, r.delta, r.n, r.sum_crv, r.chain_rhs,
                  r.empirical_constant, r.all_links ? "ok" : "FAIL");
    }
  }
}
