// Norms of two single-entry structure matrices on a small window: the
// multiplier norm sees 1 for both, the observable norm separates them.

#include <cstdio>

#include "covop/covop.hpp"

int main() {
  using namespace covop;
  const Index window = 4;
  const std::size_t grid = 512;

  const StructureMatrix off = custom([](Index n, Index m) { return n == 0 && m == 1 ? Complex(1.0) : Complex{}; });
  const StructureMatrix diag = custom([](Index n, Index m) { return n == 0 && m == 0 ? Complex(1.0) : Complex{}; });

  for (const auto& [name, c] : {std::pair{"s_01", off}, std::pair{"s_00", diag}}) {
    const NormReport r = norm_report(c, window, grid);
    std::printf("%s\n", name);
    std::printf("  ||C||_1inf      %.17g\n", r.norm_1inf);
    std::printf("  ||C||_m in      [%.17g, %.17g]\n", r.multiplier_lower, r.multiplier_upper);
    std::printf("  ||C||_o >=      %.17g  on %s\n", r.observable_lower, format_arcs(r.observable_witness).c_str());
    std::printf("  ||C||_f         %.17g\n", r.first_moment);
  }
  std::printf("1/pi = %.17g, sqrt(2)/pi = %.17g\n", 1.0 / kPi, std::sqrt(2.0) / kPi);
}
