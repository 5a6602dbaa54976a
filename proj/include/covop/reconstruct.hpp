#pragma once

// Fejer-kernel (Cesaro) reconstruction of G^C(X) and of densities from the
// cyclic moments.

#include <cmath>
#include <vector>

#include "covop/borel.hpp"
#include "covop/gom.hpp"
#include "covop/moments.hpp"

namespace covop {

/// K_M(theta) = (1/M) [sin(M theta/2) / sin(theta/2)]^2, with K_M(0) = M.
inline double fejer_kernel(Index m_terms, double theta) {
  if (m_terms < 1) throw Error(ErrorCode::InvalidArgument, "Fejer kernel order must be >= 1");
  const double t = std::remainder(theta, kTwoPi);
  const double half = std::sin(0.5 * t);
  const double md = static_cast<double>(m_terms);
  if (half == 0.0) return md;
  const double ratio = std::sin(0.5 * md * t) / half;
  return ratio * ratio / md;
}

/// Cesaro weight (1 - |k|/M)_+.
inline double fejer_weight(Index m_terms, Index k) {
  const double w = 1.0 - static_cast<double>(std::abs(k)) / static_cast<double>(m_terms);
  return w > 0.0 ? w : 0.0;
}

// (1/M) sum_{N=0}^{M-1} sum_{k=-N}^{N} i(X)_{0,k} V_k^C, accumulated term by
// term; V_k vanishes on the window once |k| > 2N.
inline WindowMatrix cesaro_operator(const StructureMatrix& c, const BorelSet& x, Index m_terms, Index radius) {
  if (m_terms < 1) throw Error(ErrorCode::InvalidArgument, "Cesaro order must be >= 1");
  const Index reach = 2 * radius;
  std::vector<WindowMatrix> moments;
  std::vector<Complex> row;
  moments.reserve(static_cast<std::size_t>(2 * reach + 1));
  for (Index k = -reach; k <= reach; ++k) {
    moments.push_back(cyclic_moment(c, k, radius));
    row.push_back(std::conj(interval_coefficient(x, k)));  // i(X)_{0,k} = (1/2pi) \int_X e^{-ik theta}
  }
  WindowMatrix acc(radius);
  for (Index big_n = 0; big_n < m_terms; ++big_n) {
    const Index top = std::min(big_n, reach);
    for (Index k = -top; k <= top; ++k) {
      const auto idx = static_cast<std::size_t>(k + reach);
      acc += row[idx] * moments[idx];
    }
  }
  return (1.0 / static_cast<double>(m_terms)) * acc;
}

/// <phi | V_k^C psi> = sum_m conj(phi_{m-k}) c_{m-k, m} psi_m.
inline Complex cyclic_moment_form(const StructureMatrix& c, Index k, const FiniteVector& phi, const FiniteVector& psi) {
  Complex sum{};
  for (const auto& [m, qm] : psi.coefficients()) {
    const Complex pn = phi[m - k];
    if (pn != Complex{}) sum += std::conj(pn) * c(m - k, m) * qm;
  }
  return sum;
}

// Cesaro mean (1/M) sum_N sum_{|k|<=N} e^{-ik theta} <phi|V_k psi>, divided
// by 2pi so that it is the Fejer mean of density(C, phi, psi).
inline TrigPolynomial cesaro_density(const StructureMatrix& c, const FiniteVector& phi, const FiniteVector& psi,
                                     Index m_terms) {
  if (m_terms < 1) throw Error(ErrorCode::InvalidArgument, "Cesaro order must be >= 1");
  const Index reach = std::min<Index>(m_terms - 1, phi.covering_radius() + psi.covering_radius());
  std::map<Index, Complex> coeffs;
  for (Index k = -reach; k <= reach; ++k) {
    const Complex moment = cyclic_moment_form(c, k, phi, psi);
    if (moment == Complex{}) continue;
    coeffs[-k] = fejer_weight(m_terms, k) * moment / kTwoPi;
  }
  return TrigPolynomial(std::move(coeffs));
}

/// Riemann-sum L^1 distance over a uniform grid of `points` samples.
inline double l1_distance(const TrigPolynomial& a, const TrigPolynomial& b, std::size_t points = 720) {
  double sum = 0.0;
  const double h = kTwoPi / static_cast<double>(points);
  for (std::size_t j = 0; j < points; ++j) {
    const double theta = h * static_cast<double>(j);
    sum += std::abs(a(theta) - b(theta));
  }
  return sum * h;
}

struct ReconstructionRow {
  Index m_terms;
  double entry_dev;  // max |cesaro_operator - gom_matrix|
  double l1_err;     // L^1 distance of the Cesaro density to the exact density
};

inline std::vector<ReconstructionRow> reconstruction_sweep(const StructureMatrix& c, const BorelSet& x, Index radius,
                                                           const std::vector<Index>& m_list, const FiniteVector& phi,
                                                           const FiniteVector& psi, std::size_t grid = 720) {
  const WindowMatrix exact = gom_matrix(c, x, radius);
  const TrigPolynomial g = density(c, phi, psi);
  std::vector<ReconstructionRow> rows;
  for (Index m : m_list) {
    rows.push_back({m, max_abs_diff(cesaro_operator(c, x, m, radius), exact),
                    l1_distance(cesaro_density(c, phi, psi, m), g, grid)});
  }
  return rows;
}

}  // namespace covop
