#pragma once

// The covariant generalized operator measure G^C: its matrix C * i(X) on a
// window, the scalar forms G^C(X)(phi, psi), their densities, integrals of
// step and trigonometric functions, and the simple-measure decompositions.

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "covop/borel.hpp"
#include "covop/core.hpp"
#include "covop/structure.hpp"

namespace covop {

// theta -> sum_k a_k e^{ik theta}
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  explicit TrigPolynomial(std::map<Index, Complex> coeffs) {
    for (const auto& [k, a] : coeffs) set(k, a);
  }

  static TrigPolynomial monomial(Index k, Complex a = 1.0) { return TrigPolynomial({{k, a}}); }

  Complex coefficient(Index k) const {
    const auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Complex{} : it->second;
  }

  void set(Index k, Complex a) {
    if (!is_finite(a)) throw Error(ErrorCode::NonFiniteEntry, "trig coefficient is not finite");
    if (a == Complex{}) {
      coeffs_.erase(k);
    } else {
      coeffs_[k] = a;
    }
  }

  const std::map<Index, Complex>& coefficients() const noexcept { return coeffs_; }

  Index bandwidth() const noexcept {
    if (coeffs_.empty()) return 0;
    return std::max(std::abs(coeffs_.begin()->first), std::abs(coeffs_.rbegin()->first));
  }

  Complex operator()(double theta) const {
    Complex sum{};
    for (const auto& [k, a] : coeffs_) sum += a * std::polar(1.0, static_cast<double>(k) * theta);
    return sum;
  }

  /// \int_X f(theta) d theta, exact arc by arc.
  Complex integrate(const BorelSet& x) const {
    Complex sum{};
    for (const auto& [k, a] : coeffs_) sum += a * arc_integral(x, k);
    return sum;
  }

 private:
  std::map<Index, Complex> coeffs_;
};

// Piecewise-constant function; the pieces must be pairwise disjoint.
class StepFunction {
 public:
  StepFunction() = default;
  explicit StepFunction(std::vector<std::pair<BorelSet, Complex>> pieces) : pieces_(std::move(pieces)) {
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      for (std::size_t j = i + 1; j < pieces_.size(); ++j) {
        if (!intersect(pieces_[i].first, pieces_[j].first).is_empty()) {
          throw Error(ErrorCode::OverlappingPieces,
                      "pieces " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
        }
      }
    }
  }

  const std::vector<std::pair<BorelSet, Complex>>& pieces() const noexcept { return pieces_; }

  double sup_abs() const {
    double best = 0.0;
    for (const auto& [set, value] : pieces_) best = std::max(best, std::abs(value));
    return best;
  }

 private:
  std::vector<std::pair<BorelSet, Complex>> pieces_;
};

/// Matrix of G^C(X) on the window: C * i(X).
inline WindowMatrix gom_matrix(const StructureMatrix& c, const BorelSet& x, Index radius) {
  return schur_product(realize(c, radius), interval_matrix(x, radius));
}

/// G^C(X)(phi, psi) = sum_{n,m} conj(phi_n) c_nm i(X)_nm psi_m.
inline Complex form_value(const StructureMatrix& c, const BorelSet& x, const FiniteVector& phi,
                          const FiniteVector& psi) {
  std::map<Index, Complex> coeff;
  auto coefficient = [&](Index k) {
    auto it = coeff.find(k);
    if (it == coeff.end()) it = coeff.emplace(k, interval_coefficient(x, k)).first;
    return it->second;
  };
  Complex sum{};
  for (const auto& [n, pn] : phi.coefficients()) {
    for (const auto& [m, qm] : psi.coefficients()) sum += std::conj(pn) * c(n, m) * coefficient(n - m) * qm;
  }
  return sum;
}

struct WindowedForm {
  Complex value;      // window slice contribution
  double tail_bound;  // bound on what lies outside the window
};

// G^C(X)(phi, psi) for phi in H, psi in H_1 given only window slices. With
// phi = phi_W + phi_T and psi = psi_W + psi_T, the three tail cross terms
// are each bounded by S^C ||.||_2 ||.||_1; the caller supplies the tail norms.
inline WindowedForm form_value_windowed(const StructureMatrix& c, const BorelSet& x, const GeneralizedVector& phi,
                                        const GeneralizedVector& psi, Index radius, double sup_entry,
                                        double phi_tail_l2, double psi_tail_l1) {
  const FiniteVector phi_w = phi.slice(radius);
  const FiniteVector psi_w = psi.slice(radius);
  const double phi_w_l2 = vector_p_norm(phi_w, PNorm::Two);
  const double psi_w_l1 = vector_p_norm(psi_w, PNorm::One);
  const double bound = sup_entry * (phi_tail_l2 * psi_w_l1 + phi_w_l2 * psi_tail_l1 + phi_tail_l2 * psi_tail_l1);
  return {form_value(c, x, phi_w, psi_w), bound};
}

/// Density g with \int_X g = G^C(X)(phi, psi): a_k = (1/2pi) sum_{n-m=k} conj(phi_n) c_nm psi_m.
inline TrigPolynomial density(const StructureMatrix& c, const FiniteVector& phi, const FiniteVector& psi) {
  std::map<Index, Complex> coeffs;
  for (const auto& [n, pn] : phi.coefficients()) {
    for (const auto& [m, qm] : psi.coefficients()) coeffs[n - m] += std::conj(pn) * c(n, m) * qm;
  }
  for (auto& [k, a] : coeffs) a /= kTwoPi;
  return TrigPolynomial(std::move(coeffs));
}

inline WindowMatrix integrate_step(const StructureMatrix& c, const StepFunction& f, Index radius) {
  const WindowMatrix cw = realize(c, radius);
  WindowMatrix acc(radius);
  for (const auto& [set, value] : f.pieces()) acc += value * schur_product(cw, interval_matrix(set, radius));
  return acc;
}

/// \int f dG^C on the window: entry (n, m) = c_nm a_{m-n}.
inline WindowMatrix integrate_trig(const StructureMatrix& c, const TrigPolynomial& f, Index radius) {
  return WindowMatrix::from_generator(radius, [&](Index n, Index m) {
    const Complex a = f.coefficient(m - n);
    return a == Complex{} ? Complex{} : c(n, m) * a;
  });
}

/// Sum_k rank_one(v^k, u^k) realized on a window.
inline WindowMatrix realize_sum(const std::vector<RankOnePair>& pairs, Index radius) {
  WindowMatrix acc(radius);
  for (const auto& [v, u] : pairs) acc += realize(rank_one(v, u), radius);
  return acc;
}

// v^k = phi_k, u^k = sum_m conj(c_km) phi_m, for k in the window.
inline std::vector<RankOnePair> row_decompose(const StructureMatrix& c, Index radius) {
  std::vector<RankOnePair> out;
  for (Index k = -radius; k <= radius; ++k) {
    GeneralizedVector u([c, k](Index m) { return std::conj(c(k, m)); }, Membership::Vdual);
    out.push_back({GeneralizedVector::basis(k), std::move(u)});
  }
  return out;
}

// From c_nm = <psi_n | eta_m>: (v^k | phi_n) = <phi_k | psi_n>, i.e.
// v^k(n) = conj(psi_n[k]) and u^k(m) = conj(eta_m[k]), one pair per
// component index k occurring in either table.
inline std::vector<RankOnePair> factorization_decompose(const VectorTable& psi, const VectorTable& eta) {
  std::set<Index> components;
  for (const VectorTable* table : {&psi, &eta}) {
    for (const auto& [n, vec] : table->rows) {
      for (const auto& [k, z] : vec.coefficients()) components.insert(k);
    }
    for (const auto& [k, z] : table->fallback.coefficients()) components.insert(k);
  }
  auto shared_psi = std::make_shared<const VectorTable>(psi);
  auto shared_eta = std::make_shared<const VectorTable>(eta);
  std::vector<RankOnePair> out;
  for (Index k : components) {
    GeneralizedVector v([shared_psi, k](Index n) { return std::conj(shared_psi->at(n)[k]); }, Membership::Hinf,
                        std::sqrt(shared_psi->sup_norm_squared()));
    GeneralizedVector u([shared_eta, k](Index m) { return std::conj(shared_eta->at(m)[k]); }, Membership::Hinf,
                        std::sqrt(shared_eta->sup_norm_squared()));
    out.push_back({std::move(v), std::move(u)});
  }
  return out;
}

/// sup over the window of sum_k |w^k(n)|^2, the row-sum quantity of a decomposition side.
inline double decomposition_row_sum(const std::vector<RankOnePair>& pairs, Index radius, bool use_v) {
  double best = 0.0;
  for (Index n = -radius; n <= radius; ++n) {
    double acc = 0.0;
    for (const auto& [v, u] : pairs) acc += std::norm(use_v ? v(n) : u(n));
    best = std::max(best, acc);
  }
  return best;
}

// Polarization into four positive parts:
// C_s(n, m) = sum_k w_s^k(n) conj(w_s^k(m)) with w_s^k = v^k + i^s u^k,
// and sum_k rank_one(v^k, u^k) = (1/4) sum_s i^s C_s.
inline std::array<StructureMatrix, 4> polarization(const std::vector<RankOnePair>& pairs, Index radius) {
  static constexpr std::array<Complex, 4> kUnit{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
  const auto d = static_cast<std::size_t>(2 * radius + 1);
  std::vector<std::vector<Complex>> v_rows;
  std::vector<std::vector<Complex>> u_rows;
  for (const auto& [v, u] : pairs) {
    v_rows.push_back(v.window(radius));
    u_rows.push_back(u.window(radius));
  }
  auto build = [&](std::size_t s) {
    WindowMatrix out(radius);
    std::vector<Complex> w(d);
    std::vector<Complex> acc(d * d);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      for (std::size_t i = 0; i < d; ++i) w[i] = v_rows[k][i] + kUnit[s] * u_rows[k][i];
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t col = 0; col < d; ++col) acc[r * d + col] += w[r] * std::conj(w[col]);
      }
    }
    return dense(WindowMatrix(radius, std::move(acc)));
  };
  return {build(0), build(1), build(2), build(3)};
}

/// (1/4) sum_s i^s C_s on the window.
inline WindowMatrix depolarize(const std::array<StructureMatrix, 4>& parts, Index radius) {
  static constexpr std::array<Complex, 4> kUnit{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
  WindowMatrix acc(radius);
  for (std::size_t s = 0; s < 4; ++s) acc += kUnit[s] * realize(parts[s], radius);
  return 0.25 * acc;
}

}  // namespace covop
