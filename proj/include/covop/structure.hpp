#pragma once

// Structure matrices C = (c_nm) as window-independent generators, with the
// family metadata the diagnostics need to certify global properties.

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "covop/core.hpp"

namespace covop {

enum class FamilyTag { Ones, Identity, SignCounterexample, LogCounterexample, Gram, RankOne, Phase, Dense, Custom };

constexpr std::string_view family_name(FamilyTag tag) noexcept {
  switch (tag) {
    case FamilyTag::Ones: return "ones";
    case FamilyTag::Identity: return "identity";
    case FamilyTag::SignCounterexample: return "sign_counterexample";
    case FamilyTag::LogCounterexample: return "log_counterexample";
    case FamilyTag::Gram: return "gram";
    case FamilyTag::RankOne: return "rank_one";
    case FamilyTag::Phase: return "phase";
    case FamilyTag::Dense: return "dense";
    case FamilyTag::Custom: return "custom";
  }
  return "custom";
}

enum class Membership { H1, H2, Hinf, Vdual };

class GeneralizedVector {
 public:
  using Generator = std::function<Complex(Index)>;

  GeneralizedVector() : GeneralizedVector([](Index) { return Complex{}; }, Membership::H1, 0.0) {}

  GeneralizedVector(Generator generator, Membership tag, std::optional<double> sup_bound = std::nullopt)
      : generator_(std::make_shared<const Generator>(std::move(generator))), tag_(tag), sup_bound_(sup_bound) {}

  static GeneralizedVector from_finite(const FiniteVector& v, Membership tag = Membership::H1) {
    return GeneralizedVector([v](Index n) { return v[n]; }, tag, vector_p_norm(v, PNorm::Inf));
  }

  static GeneralizedVector basis(Index k) { return from_finite(FiniteVector::basis(k)); }

  Complex operator()(Index n) const { return (*generator_)(n); }
  Membership membership() const noexcept { return tag_; }
  std::optional<double> sup_bound() const noexcept { return sup_bound_; }

  std::vector<Complex> window(Index radius) const {
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(2 * radius + 1));
    for (Index n = -radius; n <= radius; ++n) out.push_back((*this)(n));
    return out;
  }

  FiniteVector slice(Index radius) const {
    FiniteVector out;
    for (Index n = -radius; n <= radius; ++n) out.set(n, (*this)(n));
    return out;
  }

  // An Hinf tag with a declared bound is contradicted when a queried
  // coefficient exceeds it; other tags carry no window-checkable claim.
  bool window_consistent(Index radius) const {
    if (tag_ != Membership::Hinf) return true;
    if (!sup_bound_) return false;
    for (Index n = -radius; n <= radius; ++n) {
      if (std::abs((*this)(n)) > *sup_bound_) return false;
    }
    return true;
  }

 private:
  std::shared_ptr<const Generator> generator_;
  Membership tag_;
  std::optional<double> sup_bound_;
};

// Table of vectors psi_n; indices without an entry use the fallback vector.
struct VectorTable {
  std::map<Index, FiniteVector> rows;
  FiniteVector fallback;

  const FiniteVector& at(Index n) const {
    const auto it = rows.find(n);
    return it == rows.end() ? fallback : it->second;
  }

  double sup_norm_squared() const {
    double best = std::pow(vector_p_norm(fallback, PNorm::Two), 2);
    for (const auto& [n, v] : rows) best = std::max(best, std::pow(vector_p_norm(v, PNorm::Two), 2));
    return best;
  }
};

struct RankOnePair {
  GeneralizedVector v;
  GeneralizedVector u;
};

// Global properties a family can declare; window data never establishes them.
struct FamilyGuarantees {
  bool global_psd = false;
  std::optional<double> diagonal_bound;       // sup_n c_nn for PSD families
  std::optional<double> factorization_bound;  // sup ||psi_n|| * sup ||eta_m|| of a declared factorization
  std::optional<double> row_bound;            // sup_n (sum_m |c_nm|^2)^{1/2}
};

struct DensePayload {
  WindowMatrix matrix;
};

using PhaseTable = std::map<Index, double>;

using FamilyMetadata = std::variant<std::monostate, VectorTable, RankOnePair, PhaseTable, DensePayload>;

class StructureMatrix {
 public:
  using Generator = std::function<Complex(Index, Index)>;

  StructureMatrix(FamilyTag tag, Generator generator, FamilyGuarantees guarantees = {}, FamilyMetadata metadata = {})
      : state_(std::make_shared<const State>(State{tag, std::move(generator), guarantees, std::move(metadata)})) {}

  Complex operator()(Index n, Index m) const {
    if (const auto* dense = std::get_if<DensePayload>(&state_->metadata)) {
      if (!dense->matrix.contains(n) || !dense->matrix.contains(m)) {
        throw Error(ErrorCode::RadiusExceeded, "dense structure matrix queried beyond its declared radius " +
                                                   std::to_string(dense->matrix.radius()));
      }
    }
    return state_->generator(n, m);
  }

  FamilyTag family() const noexcept { return state_->tag; }
  const FamilyGuarantees& guarantees() const noexcept { return state_->guarantees; }
  const FamilyMetadata& metadata() const noexcept { return state_->metadata; }

  std::optional<Index> declared_radius() const {
    if (const auto* dense = std::get_if<DensePayload>(&state_->metadata)) return dense->matrix.radius();
    return std::nullopt;
  }

 private:
  struct State {
    FamilyTag tag;
    Generator generator;
    FamilyGuarantees guarantees;
    FamilyMetadata metadata;
  };
  std::shared_ptr<const State> state_;
};

inline WindowMatrix realize(const StructureMatrix& c, Index radius) {
  if (const auto r = c.declared_radius(); r && radius > *r) {
    throw Error(ErrorCode::RadiusExceeded,
                "window " + std::to_string(radius) + " exceeds dense radius " + std::to_string(*r));
  }
  return WindowMatrix::from_generator(radius, [&](Index n, Index m) { return c(n, m); });
}

inline StructureMatrix ones() {
  return StructureMatrix(FamilyTag::Ones, [](Index, Index) { return Complex(1.0); },
                         {.global_psd = true, .diagonal_bound = 1.0, .factorization_bound = 1.0, .row_bound = {}});
}

inline StructureMatrix identity() {
  return StructureMatrix(FamilyTag::Identity, [](Index n, Index m) { return Complex(n == m ? 1.0 : 0.0); },
                         {.global_psd = true, .diagonal_bound = 1.0, .factorization_bound = 1.0, .row_bound = 1.0});
}

/// c_nm = 1 for n > m, -1 for n < m, 0 on the diagonal.
inline StructureMatrix sign_counterexample() {
  return StructureMatrix(FamilyTag::SignCounterexample,
                         [](Index n, Index m) { return Complex(n > m ? 1.0 : (n < m ? -1.0 : 0.0)); });
}

/// The matrix whose first moment is a prescribed b:
/// c_nm = i(n-m) b_nm + b_nn delta_nm / pi.
inline StructureMatrix from_first_moment(std::function<Complex(Index, Index)> b) {
  return StructureMatrix(FamilyTag::Custom, [b = std::move(b)](Index n, Index m) {
    if (n == m) return b(n, n) / kPi;
    return Complex(0.0, static_cast<double>(n - m)) * b(n, m);
  });
}

/// gamma_n = ln(n)/n for n >= 1, 0 otherwise.
inline double log_counterexample_gamma(Index n) {
  return n >= 1 ? std::log(static_cast<double>(n)) / static_cast<double>(n) : 0.0;
}

// from_first_moment applied to b = |gamma><phi_0|; the product n * gamma_n
// is folded to ln n so the column c_{n0} = i ln n is exact.
inline StructureMatrix log_counterexample() {
  return StructureMatrix(FamilyTag::LogCounterexample, [](Index n, Index m) {
    if (m != 0 || n < 1) return Complex{};
    return Complex(0.0, std::log(static_cast<double>(n)));
  });
}

// Payload only; no global guarantee, since the family is undefined past its radius.
inline StructureMatrix dense(WindowMatrix payload) {
  auto holder = std::make_shared<const WindowMatrix>(payload);
  return StructureMatrix(FamilyTag::Dense, [holder](Index n, Index m) { return (*holder)(n, m); }, {},
                         DensePayload{std::move(payload)});
}

inline StructureMatrix custom(StructureMatrix::Generator generator, FamilyGuarantees guarantees = {}) {
  return StructureMatrix(FamilyTag::Custom, std::move(generator), guarantees);
}

/// c_nm = <psi_n | psi_m>.
inline StructureMatrix gram(VectorTable table) {
  const double bound = table.sup_norm_squared();
  auto shared = std::make_shared<const VectorTable>(table);
  return StructureMatrix(FamilyTag::Gram, [shared](Index n, Index m) { return inner(shared->at(n), shared->at(m)); },
                         {.global_psd = true, .diagonal_bound = bound, .factorization_bound = bound, .row_bound = {}},
                         std::move(table));
}

inline StructureMatrix gram(std::map<Index, FiniteVector> vectors, FiniteVector default_vector) {
  return gram(VectorTable{std::move(vectors), std::move(default_vector)});
}

/// c_nm = v(n) conj(u(m)).
inline StructureMatrix rank_one(GeneralizedVector v, GeneralizedVector u) {
  FamilyGuarantees g;
  if (v.membership() == Membership::Hinf && u.membership() == Membership::Hinf && v.sup_bound() && u.sup_bound()) {
    g.factorization_bound = *v.sup_bound() * *u.sup_bound();
  }
  return StructureMatrix(FamilyTag::RankOne, [v, u](Index n, Index m) { return v(n) * std::conj(u(m)); }, g,
                         RankOnePair{v, u});
}

/// Y_v = (e^{i(v_n - v_m)}); indices absent from the table use phase 0.
inline StructureMatrix phase_matrix(PhaseTable phases) {
  auto shared = std::make_shared<const PhaseTable>(phases);
  auto phase = [shared](Index n) {
    const auto it = shared->find(n);
    return it == shared->end() ? 0.0 : it->second;
  };
  return StructureMatrix(FamilyTag::Phase, [phase](Index n, Index m) { return std::polar(1.0, phase(n) - phase(m)); },
                         {.global_psd = true, .diagonal_bound = 1.0, .factorization_bound = 1.0, .row_bound = {}},
                         std::move(phases));
}

/// Built-in families by name: ones, identity, sign (sign_counterexample),
/// log (log_counterexample), dense (requires a payload).
inline StructureMatrix builtin(std::string_view name, const std::optional<WindowMatrix>& dense_payload = std::nullopt) {
  if (name == "ones") return ones();
  if (name == "identity") return identity();
  if (name == "sign" || name == "sign_counterexample") return sign_counterexample();
  if (name == "log" || name == "log_counterexample") return log_counterexample();
  if (name == "dense") {
    if (!dense_payload) throw Error(ErrorCode::InvalidArgument, "dense family needs a matrix payload");
    return dense(*dense_payload);
  }
  throw Error(ErrorCode::UnknownFamily, "unknown family '" + std::string(name) + "'");
}

}  // namespace covop
