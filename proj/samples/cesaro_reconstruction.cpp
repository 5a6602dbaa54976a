// Cesaro means of the cyclic moments converge to the measure: entry
// deviation on a window and L1 error of the density, for growing M.

#include <cstdio>

#include "covop/covop.hpp"

int main() {
  using namespace covop;
  const BorelSet x = parse_arcs("0.5:2.5,4:5");
  FiniteVector v;
  v.set(0, 1.0 / std::sqrt(2.0));
  v.set(1, 1.0 / std::sqrt(2.0));

  std::printf("M,entry_dev,l1_err\n");
  for (const ReconstructionRow& r : reconstruction_sweep(ones(), x, 6, {4, 8, 16, 32, 64, 128, 256}, v, v)) {
    std::printf("%lld,%.6e,%.6e\n", static_cast<long long>(r.m_terms), r.entry_dev, r.l1_err);
  }
}
