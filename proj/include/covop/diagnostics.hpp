#pragma once

// Norms of structure matrices on windows (sup entry, multiplier bracket,
// observable-norm lower bound, first-moment norm), the order map alpha, and
// truncation sweeps feeding the extensibility verdict.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "covop/borel.hpp"
#include "covop/core.hpp"
#include "covop/gom.hpp"
#include "covop/moments.hpp"
#include "covop/random.hpp"
#include "covop/structure.hpp"

namespace covop {

inline constexpr double kDivergenceSlope = 0.1;

/// S^C restricted to the window: max |c_nm|.
inline double sup_entry(const StructureMatrix& c, Index radius) { return realize(c, radius).max_abs(); }

/// ||C||_f on the window: operator norm of Theta_1.
inline double first_moment_norm(const StructureMatrix& c, Index radius) {
  return operator_norm(moment_matrix(c, 1, radius));
}

/// Seeded union of one to four random arcs.
inline BorelSet random_arc_union(Rng& rng) {
  const auto count = static_cast<std::size_t>(rng.integer(1, 4));
  std::vector<std::pair<double, double>> raw;
  for (std::size_t i = 0; i < count; ++i) {
    const double a = rng.uniform(0.0, kTwoPi);
    const double len = rng.uniform(0.05, 0.95) * kTwoPi / static_cast<double>(count);
    raw.emplace_back(a, a + len);
  }
  return BorelSet::normalize(raw);
}

struct MultiplierBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Lower end: best ||C * A|| / ||A|| over identity, the all-ones window, C
// itself, 32 random sign matrices and 32 random interval matrices. Upper end:
// ||C||_{2,inf}-type row/column bound, or max c_nn when the window is PSD
// (Gram factorization c_nm = <psi_n|psi_m> with ||psi_n||^2 = c_nn).
inline MultiplierBounds multiplier_bounds(const StructureMatrix& c, Index radius, std::uint64_t seed = 0) {
  const WindowMatrix cw = realize(c, radius);
  Rng rng(seed);
  std::vector<WindowMatrix> adversaries{WindowMatrix::identity(radius), WindowMatrix::constant(radius, 1.0), cw};
  for (int i = 0; i < 32; ++i) {
    adversaries.push_back(WindowMatrix::from_generator(radius, [&](Index, Index) { return Complex(rng.sign()); }));
  }
  for (int i = 0; i < 32; ++i) adversaries.push_back(interval_matrix(random_arc_union(rng), radius));

  MultiplierBounds out;
  for (const WindowMatrix& a : adversaries) {
    const double denom = operator_norm(a);
    if (denom == 0.0) continue;
    out.lower = std::max(out.lower, operator_norm(schur_product(cw, a)) / denom);
  }
  out.upper = std::min(max_row_norm(cw, PNorm::Two), max_column_norm(cw, PNorm::Two));
  if (is_psd(cw)) {
    double diag = 0.0;
    for (Index n = -radius; n <= radius; ++n) diag = std::max(diag, cw(n, n).real());
    out.upper = std::min(out.upper, diag);
  }
  // each ratio is at most ||C||_m <= upper; any excess is rounding in the norms
  out.lower = std::min(out.lower, out.upper);
  return out;
}

struct ObservableEstimate {
  double value = 0.0;
  BorelSet witness;
};

// Lower bound for sup_X ||C * i(X)|| over single grid arcs (wrap-around
// included), 64 seeded unions of up to four arcs, and the full circle.
// Candidates are screened with a short warm-started power iteration (after
// a Frobenius-norm cut) and the eight best are refined with operator_norm.
inline ObservableEstimate observable_norm_estimate(const StructureMatrix& c, Index radius, std::size_t grid_size = 256,
                                                   std::uint64_t seed = 0) {
  if (grid_size < 8) throw Error(ErrorCode::InvalidArgument, "grid_size must be >= 8");
  constexpr std::size_t kRefine = 8;
  constexpr std::size_t kScreenIterations = 24;
  const WindowMatrix cw = realize(c, radius);

  struct Scored {
    double screen;
    BorelSet set;
  };
  std::vector<Scored> top;
  double best_screen = 0.0;
  std::vector<Complex> warm = detail::seeded_start(cw.dim(), seed);

  auto consider = [&](const BorelSet& x) {
    const WindowMatrix m = schur_product(cw, interval_matrix(x, radius));
    if (frobenius_norm(m) <= best_screen) return;
    PowerIterationResult r = power_iterate(m, warm, kScreenIterations, 1e-12);
    if (r.value > 0.0 && !r.vector.empty()) warm = r.vector;
    best_screen = std::max(best_screen, r.value);
    top.push_back({r.value, x});
    std::sort(top.begin(), top.end(), [](const Scored& a, const Scored& b) { return a.screen > b.screen; });
    if (top.size() > kRefine) top.pop_back();
  };

  const BorelSet full = BorelSet::full();
  ObservableEstimate out{operator_norm(schur_product(cw, interval_matrix(full, radius))), full};
  best_screen = out.value;

  const double h = kTwoPi / static_cast<double>(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    for (std::size_t j = 0; j < grid_size; ++j) {
      if (i == j) continue;
      const double a = h * static_cast<double>(i);
      const double b = h * static_cast<double>(j);
      const std::pair<double, double> raw{a, b};
      consider(BorelSet::normalize(std::span(&raw, 1)));
    }
  }
  Rng rng(seed ^ 0x5bd1e995ULL);
  for (int i = 0; i < 64; ++i) consider(random_arc_union(rng));

  for (const Scored& s : top) {
    const double exact = operator_norm(schur_product(cw, interval_matrix(s.set, radius)));
    // ties within rounding keep the full circle
    if (exact > out.value * (1.0 + 1e-12)) out = {exact, s.set};
  }
  return out;
}

struct NormReport {
  double norm_1inf = 0.0;
  double multiplier_lower = 0.0;
  double multiplier_upper = 0.0;
  double observable_lower = 0.0;
  BorelSet observable_witness;
  double first_moment = 0.0;
};

inline NormReport norm_report(const StructureMatrix& c, Index radius, std::size_t grid_size = 256,
                              std::uint64_t seed = 0) {
  NormReport r;
  r.norm_1inf = sup_entry(c, radius);
  const MultiplierBounds mb = multiplier_bounds(c, radius, seed);
  r.multiplier_lower = mb.lower;
  r.multiplier_upper = mb.upper;
  const ObservableEstimate obs = observable_norm_estimate(c, radius, grid_size, seed);
  r.observable_lower = obs.value;
  r.observable_witness = obs.witness;
  r.first_moment = first_moment_norm(c, radius);
  return r;
}

/// True when the window realization is PSD with unit diagonal (an observable).
inline bool is_observable_window(const WindowMatrix& cw, double tol = 1e-10) {
  for (Index n = -cw.radius(); n <= cw.radius(); ++n) {
    if (std::abs(cw(n, n) - 1.0) > tol) return false;
  }
  return is_psd(cw, tol);
}

/// alpha([C]) = ||C||_f for PSD unit-diagonal C; lies in [pi, 2pi].
inline double alpha(const StructureMatrix& c, Index radius) {
  if (!is_observable_window(realize(c, radius))) {
    throw Error(ErrorCode::NotObservableMatrix, "alpha needs a PSD structure matrix with unit diagonal");
  }
  return first_moment_norm(c, radius);
}

// For C = D * E with E an observable: alpha(C) <= alpha(D).
inline bool order_check(const StructureMatrix& c, const StructureMatrix& d, const StructureMatrix& e, Index radius) {
  const WindowMatrix ew = realize(e, radius);
  if (!is_observable_window(ew)) {
    throw Error(ErrorCode::NotObservableMatrix, "order_check needs E PSD with unit diagonal");
  }
  const WindowMatrix cw = realize(c, radius);
  const WindowMatrix de = schur_product(realize(d, radius), ew);
  if (max_abs_diff(cw, de) > 1e-12 * std::max(1.0, de.max_abs())) {
    throw Error(ErrorCode::InvalidArgument, "C is not the Schur product D * E on the window");
  }
  return alpha(c, radius) <= alpha(d, radius) + 1e-9;
}

enum class QuantityKind { SupEntry, TwoInf, Theta1, VkMax, ObsLower, Diagonal };

struct Quantity {
  QuantityKind kind = QuantityKind::SupEntry;
  Index k = 0;  // for VkMax
};

inline std::string quantity_name(const Quantity& q) {
  switch (q.kind) {
    case QuantityKind::SupEntry: return "S";
    case QuantityKind::TwoInf: return "two_inf";
    case QuantityKind::Theta1: return "theta1";
    case QuantityKind::VkMax: return "vk_max(" + std::to_string(q.k) + ")";
    case QuantityKind::ObsLower: return "obs_lower";
    case QuantityKind::Diagonal: return "diag";
  }
  return "?";
}

/// Accepts S, two_inf, theta1, obs_lower, diag, vk_max(k) / vk_max:k.
inline Quantity parse_quantity(std::string_view id) {
  if (id == "S") return {QuantityKind::SupEntry};
  if (id == "two_inf") return {QuantityKind::TwoInf};
  if (id == "theta1") return {QuantityKind::Theta1};
  if (id == "obs_lower") return {QuantityKind::ObsLower};
  if (id == "diag") return {QuantityKind::Diagonal};
  if (id.starts_with("vk_max")) {
    std::string_view rest = id.substr(6);
    if (!rest.empty() && (rest.front() == '(' || rest.front() == ':')) {
      const bool paren = rest.front() == '(';
      rest.remove_prefix(1);
      if (paren) {
        if (rest.empty() || rest.back() != ')') throw Error(ErrorCode::UnknownQuantity, std::string(id));
        rest.remove_suffix(1);
      }
      Index k = 0;
      const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
      if (ec == std::errc{} && ptr == rest.data() + rest.size()) return {QuantityKind::VkMax, k};
    }
  }
  throw Error(ErrorCode::UnknownQuantity, "unknown sweep quantity '" + std::string(id) + "'");
}

struct SweepOptions {
  std::size_t grid_size = 256;
  std::uint64_t seed = 0;
};

inline double evaluate_quantity(const StructureMatrix& c, const Quantity& q, Index radius,
                                const SweepOptions& opts = {}) {
  switch (q.kind) {
    case QuantityKind::SupEntry: return sup_entry(c, radius);
    case QuantityKind::TwoInf: return max_row_norm(realize(c, radius), PNorm::Two);
    case QuantityKind::Theta1: return first_moment_norm(c, radius);
    case QuantityKind::VkMax: {
      // ||V_k|| = max_n |c_{n,n+k}| on the window
      double best = 0.0;
      for (Index n = -radius; n <= radius; ++n) {
        if (std::abs(n + q.k) <= radius) best = std::max(best, std::abs(c(n, n + q.k)));
      }
      return best;
    }
    case QuantityKind::ObsLower: return observable_norm_estimate(c, radius, opts.grid_size, opts.seed).value;
    case QuantityKind::Diagonal: {
      double best = 0.0;
      for (Index n = -radius; n <= radius; ++n) best = std::max(best, std::abs(c(n, n)));
      return best;
    }
  }
  return 0.0;
}

enum class Growth { Bounded, Divergent };

constexpr std::string_view growth_name(Growth g) { return g == Growth::Bounded ? "bounded" : "divergent"; }

struct SweepResult {
  std::string quantity;
  std::vector<std::pair<Index, double>> values;
  double slope = 0.0;  // least-squares slope of value against ln(2N+1)
  Growth growth = Growth::Bounded;
};

inline double growth_slope(const std::vector<std::pair<Index, double>>& values) {
  if (values.size() < 2) return 0.0;
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [n, v] : values) {
    mx += std::log(2.0 * static_cast<double>(n) + 1.0);
    my += v;
  }
  mx /= static_cast<double>(values.size());
  my /= static_cast<double>(values.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [n, v] : values) {
    const double dx = std::log(2.0 * static_cast<double>(n) + 1.0) - mx;
    sxy += dx * (v - my);
    sxx += dx * dx;
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

inline SweepResult sweep(const StructureMatrix& c, const Quantity& q, const std::vector<Index>& n_list,
                         const SweepOptions& opts = {}) {
  SweepResult out;
  out.quantity = quantity_name(q);
  for (Index n : n_list) out.values.emplace_back(n, evaluate_quantity(c, q, n, opts));
  out.slope = growth_slope(out.values);
  out.growth = out.slope > kDivergenceSlope ? Growth::Divergent : Growth::Bounded;
  return out;
}

inline SweepResult sweep(const StructureMatrix& c, std::string_view quantity_id, const std::vector<Index>& n_list,
                         const SweepOptions& opts = {}) {
  return sweep(c, parse_quantity(quantity_id), n_list, opts);
}

enum class Verdict { ExtensibleCertified, NotExtensibleEvidence, Unknown };

constexpr std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ExtensibleCertified: return "EXTENSIBLE_CERTIFIED";
    case Verdict::NotExtensibleEvidence: return "NOT_EXTENSIBLE_EVIDENCE";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

struct Certificate {
  std::string criterion;
  Index window = 0;
  double value = 0.0;
  bool sufficient = true;  // false: necessary-condition evidence
};

struct ReportRow {
  Index window;
  double theta1;
  double sup_entry;
  double two_inf;
};

struct ExtensibilityReport {
  Verdict verdict = Verdict::Unknown;
  std::string family;
  std::vector<Certificate> certificates;
  std::vector<ReportRow> sweep;
  std::vector<SweepResult> fits;  // theta1, S, two_inf, diag
};

// Sufficient criteria (each needs a family-declared global guarantee):
//   psd_bounded_diagonal  - global PSD, every window PSD, diagonal sweep bounded
//   schur_factorization   - declared factorization c_nm = <psi_n|eta_m> with bounded vectors
//   row_bound             - declared sup-row 2-norm, window ||C||_{2,inf} sweep bounded
// Necessary-condition evidence: S or ||Theta_1|| sweep divergent.
inline ExtensibilityReport extensibility_report(const StructureMatrix& c, const std::vector<Index>& n_list) {
  if (n_list.empty()) throw Error(ErrorCode::InvalidArgument, "sweep list must be nonempty");
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) throw Error(ErrorCode::InvalidArgument, "sweep list must be increasing");
  }
  ExtensibilityReport rep;
  rep.family = std::string(family_name(c.family()));
  const Index last = n_list.back();

  SweepResult theta1;
  theta1.quantity = "theta1";
  SweepResult sup;
  sup.quantity = "S";
  SweepResult two_inf;
  two_inf.quantity = "two_inf";
  SweepResult diag;
  diag.quantity = "diag";
  bool windows_psd = true;
  for (Index n : n_list) {
    const WindowMatrix cw = realize(c, n);
    const double t = operator_norm(moment_matrix(c, 1, n));
    const double s = cw.max_abs();
    const double r = max_row_norm(cw, PNorm::Two);
    double dg = 0.0;
    for (Index j = -n; j <= n; ++j) dg = std::max(dg, std::abs(cw(j, j)));
    rep.sweep.push_back({n, t, s, r});
    theta1.values.emplace_back(n, t);
    sup.values.emplace_back(n, s);
    two_inf.values.emplace_back(n, r);
    diag.values.emplace_back(n, dg);
    if (c.guarantees().global_psd) windows_psd = windows_psd && is_psd(cw);
  }
  for (SweepResult* s : {&theta1, &sup, &two_inf, &diag}) {
    s->slope = growth_slope(s->values);
    s->growth = s->slope > kDivergenceSlope ? Growth::Divergent : Growth::Bounded;
    rep.fits.push_back(*s);
  }

  const FamilyGuarantees& g = c.guarantees();
  if (g.global_psd && g.diagonal_bound && windows_psd && diag.growth == Growth::Bounded) {
    rep.certificates.push_back({"psd_bounded_diagonal", last, *g.diagonal_bound, true});
  }
  if (g.factorization_bound) {
    rep.certificates.push_back({"schur_factorization", last, *g.factorization_bound, true});
  }
  if (g.row_bound && two_inf.growth == Growth::Bounded) {
    rep.certificates.push_back({"row_bound", last, *g.row_bound, true});
  }
  if (sup.growth == Growth::Divergent) {
    rep.certificates.push_back({"sup_entry_divergent", last, sup.slope, false});
  }
  if (theta1.growth == Growth::Divergent) {
    rep.certificates.push_back({"first_moment_divergent", last, theta1.slope, false});
  }

  const bool certified =
      std::any_of(rep.certificates.begin(), rep.certificates.end(), [](const Certificate& x) { return x.sufficient; });
  const bool refuted =
      std::any_of(rep.certificates.begin(), rep.certificates.end(), [](const Certificate& x) { return !x.sufficient; });
  rep.verdict = certified ? Verdict::ExtensibleCertified : refuted ? Verdict::NotExtensibleEvidence : Verdict::Unknown;
  return rep;
}

inline std::string format_real(double x) {
  std::ostringstream out;
  out << std::setprecision(17) << x;
  return out.str();
}

inline std::string format_report_text(const ExtensibilityReport& rep) {
  std::ostringstream out;
  out << "family: " << rep.family << '\n';
  out << "verdict: " << verdict_name(rep.verdict) << '\n';
  out << "certificates:\n";
  if (rep.certificates.empty()) out << "  (none)\n";
  for (const Certificate& c : rep.certificates) {
    out << "  " << (c.sufficient ? "sufficient " : "necessary  ") << c.criterion << " N=" << c.window
        << " value=" << format_real(c.value) << '\n';
  }
  out << "sweep:\n";
  out << "  N,theta1,S,two_inf\n";
  for (const ReportRow& r : rep.sweep) {
    out << "  " << r.window << ',' << format_real(r.theta1) << ',' << format_real(r.sup_entry) << ','
        << format_real(r.two_inf) << '\n';
  }
  out << "growth (slope vs ln(2N+1), divergent above " << kDivergenceSlope << "):\n";
  for (const SweepResult& s : rep.fits) {
    out << "  " << s.quantity << " slope=" << format_real(s.slope) << ' ' << growth_name(s.growth) << '\n';
  }
  return out.str();
}

// quantity,N,value rows per quantity, each followed by its fit,slope,classification row.
inline std::string format_sweep_csv(const std::vector<SweepResult>& sweeps) {
  std::ostringstream out;
  out << "quantity,N,value\n";
  for (const SweepResult& s : sweeps) {
    for (const auto& [n, v] : s.values) out << s.quantity << ',' << n << ',' << format_real(v) << '\n';
    out << "fit," << format_real(s.slope) << ',' << growth_name(s.growth) << '\n';
  }
  return out.str();
}

}  // namespace covop
