#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace covop {

// Seeded generator with explicit bit-level conversions, so that sampled
// adversaries and arc unions are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  double sign() { return (engine_() >> 63) != 0U ? 1.0 : -1.0; }

  // Box-Muller; one draw per call keeps the stream position predictable.
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::complex<double> complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace covop
