#pragma once

// Cyclic moments V_k, polynomial moments Theta_s and the exponential
// transform F^C(z) of a covariant measure, on windows.
//
// Sign convention for the A_l expansion: with A_0 = diag(c_nn) and
// A_l = sum_{n != m} c_nm / (n-m)^l |n><m|,
//
//   Theta_s = (2pi)^s / (s+1) A_0 - s! sum_{l=1}^{s} i^l (2pi)^{s-l} / (s-l+1)! A_l.
//
// The A_0 term enters with a plus sign: Theta_0 = A_0 = G^C([0, 2pi)), and
// the s = 1 case reproduces Theta_1 = pi c_nn on the diagonal and
// c_nm / (i(n-m)) off it. The entrywise route (moment_matrix) and this
// expansion (moment_matrix_from_aux) are kept separate and cross-checked.

#include <cmath>
#include <complex>

#include "covop/core.hpp"
#include "covop/structure.hpp"

namespace covop {

inline double factorial(int s) {
  double out = 1.0;
  for (int i = 2; i <= s; ++i) out *= i;
  return out;
}

inline Complex i_power(int l) {
  switch (((l % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

/// (1/2pi) \int_0^{2pi} theta^s e^{ik theta} d theta.
inline Complex basis_moment_coefficient(int s, Index k) {
  if (s < 0) throw Error(ErrorCode::InvalidArgument, "moment order must be nonnegative");
  if (s == 0) return k == 0 ? 1.0 : 0.0;
  if (k == 0) return std::pow(kTwoPi, s) / (s + 1);
  const double kd = static_cast<double>(k);
  Complex sum{};
  for (int l = 1; l <= s; ++l) sum += i_power(l) * std::pow(kTwoPi, s - l) / factorial(s - l + 1) / std::pow(kd, l);
  return -factorial(s) * sum;
}

/// V_k^C: nonzero only at (m - k, m), where it equals c_{m-k, m}.
inline WindowMatrix cyclic_moment(const StructureMatrix& c, Index k, Index radius) {
  WindowMatrix out(radius);
  if (std::abs(k) > 2 * radius) return out;
  for (Index m = -radius; m <= radius; ++m) {
    const Index n = m - k;
    if (out.contains(n)) out.set(n, m, c(n, m));
  }
  return out;
}

/// A_0 = diag(c_nn); A_l (l >= 1) has entries c_nm / (n - m)^l off the diagonal.
inline WindowMatrix aux_matrix(const StructureMatrix& c, int l, Index radius) {
  if (l < 0) throw Error(ErrorCode::InvalidArgument, "aux_matrix order must be nonnegative");
  return WindowMatrix::from_generator(radius, [&](Index n, Index m) -> Complex {
    if (l == 0) return n == m ? c(n, n) : Complex{};
    if (n == m) return {};
    // r^l by repeated products, so A_{l+1} = A_1 * B_l holds bit for bit on ones
    const double r = 1.0 / static_cast<double>(n - m);
    double w = r;
    for (int j = 1; j < l; ++j) w *= r;
    return c(n, m) * w;
  });
}

/// Theta_s on the window: entry (n, m) = c_nm (1/2pi) \int theta^s e^{i(n-m)theta}.
inline WindowMatrix moment_matrix(const StructureMatrix& c, int s, Index radius) {
  if (s < 0) throw Error(ErrorCode::InvalidArgument, "moment order must be nonnegative");
  std::vector<Complex> coeff(static_cast<std::size_t>(4 * radius + 1));
  for (Index k = -2 * radius; k <= 2 * radius; ++k) coeff[static_cast<std::size_t>(k + 2 * radius)] = basis_moment_coefficient(s, k);
  return WindowMatrix::from_generator(radius, [&](Index n, Index m) {
    return c(n, m) * coeff[static_cast<std::size_t>(n - m + 2 * radius)];
  });
}

/// Theta_s assembled from A_0..A_s (see the header comment for the sign of A_0).
inline WindowMatrix moment_matrix_from_aux(const StructureMatrix& c, int s, Index radius) {
  if (s < 0) throw Error(ErrorCode::InvalidArgument, "moment order must be nonnegative");
  WindowMatrix acc = (std::pow(kTwoPi, s) / (s + 1)) * aux_matrix(c, 0, radius);
  for (int l = 1; l <= s; ++l) {
    const Complex weight = -factorial(s) * i_power(l) * std::pow(kTwoPi, s - l) / factorial(s - l + 1);
    acc += weight * aux_matrix(c, l, radius);
  }
  return acc;
}

inline constexpr double kTransformRadius = 1.0 / kPi;

namespace detail {

// (e^x - 1) / x, continuous through x = 0.
inline Complex expm1_ratio(Complex x) {
  if (std::abs(x) < 1e-2) {
    Complex term = 1.0;
    Complex sum = 1.0;
    for (int j = 2; j <= 9; ++j) {
      term *= x / static_cast<double>(j);
      sum += term;
    }
    return sum;
  }
  return (std::exp(x) - 1.0) / x;
}

}  // namespace detail

/// F^C(z) = \int e^{z theta} dG^C(theta) on the window, for |z| < 1/pi.
inline WindowMatrix exp_transform(const StructureMatrix& c, Complex z, Index radius) {
  if (!(std::abs(z) < kTransformRadius)) {
    throw Error(ErrorCode::OutsideDisk, "|z| must be below 1/pi");
  }
  // (1/2pi) \int e^{(z + ik) theta} = (e^{2pi z} - 1) / (2pi (z + ik)) = z E(2pi z) / (z + ik)
  const Complex ratio = detail::expm1_ratio(kTwoPi * z);
  auto kernel = [&](Index k) -> Complex {
    if (k == 0) return ratio;
    const Complex denom = z + Complex(0.0, static_cast<double>(k));
    if (denom == Complex{}) return 1.0;
    return z * ratio / denom;
  };
  std::vector<Complex> coeff(static_cast<std::size_t>(4 * radius + 1));
  for (Index k = -2 * radius; k <= 2 * radius; ++k) coeff[static_cast<std::size_t>(k + 2 * radius)] = kernel(k);
  return WindowMatrix::from_generator(radius, [&](Index n, Index m) {
    return c(n, m) * coeff[static_cast<std::size_t>(n - m + 2 * radius)];
  });
}

}  // namespace covop
