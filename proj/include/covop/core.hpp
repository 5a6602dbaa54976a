#pragma once

// Window-truncated complex matrices over the symmetric index range [-N, N],
// finitely supported coefficient sequences, and the norms used throughout.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "covop/error.hpp"
#include "covop/random.hpp"

namespace covop {

using Complex = std::complex<double>;
using Index = std::int64_t;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline bool is_finite(Complex z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

class WindowMatrix {
 public:
  WindowMatrix() : WindowMatrix(0) {}

  explicit WindowMatrix(Index radius) : radius_(check_radius(radius)), entries_(size_for(radius_)) {}

  WindowMatrix(Index radius, std::vector<Complex> entries)
      : radius_(check_radius(radius)), entries_(std::move(entries)) {
    if (entries_.size() != size_for(radius_)) {
      throw Error(ErrorCode::InvalidArgument, "entry count does not match (2N+1)^2");
    }
    for (const Complex& z : entries_) {
      if (!is_finite(z)) throw Error(ErrorCode::NonFiniteEntry, "window matrix entry is not finite");
    }
  }

  template <typename Generator>
  static WindowMatrix from_generator(Index radius, Generator&& generator) {
    WindowMatrix out(radius);
    for (Index n = -radius; n <= radius; ++n) {
      for (Index m = -radius; m <= radius; ++m) out.set(n, m, generator(n, m));
    }
    return out;
  }

  static WindowMatrix identity(Index radius) {
    WindowMatrix out(radius);
    for (Index n = -radius; n <= radius; ++n) out.set(n, n, 1.0);
    return out;
  }

  static WindowMatrix constant(Index radius, Complex value) {
    WindowMatrix out(radius);
    std::fill(out.entries_.begin(), out.entries_.end(), value);
    return out;
  }

  Index radius() const noexcept { return radius_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(2 * radius_ + 1); }
  bool contains(Index n) const noexcept { return n >= -radius_ && n <= radius_; }

  Complex operator()(Index n, Index m) const { return entries_[offset(n, m)]; }

  void set(Index n, Index m, Complex value) {
    if (!is_finite(value)) throw Error(ErrorCode::NonFiniteEntry, "window matrix entry is not finite");
    entries_[offset(n, m)] = value;
  }

  // Row-major storage, row index n + N, column index m + N.
  std::span<const Complex> data() const noexcept { return entries_; }
  const Complex& at_position(std::size_t row, std::size_t col) const noexcept { return entries_[row * dim() + col]; }

  WindowMatrix adjoint() const {
    WindowMatrix out(radius_);
    const std::size_t d = dim();
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) out.entries_[c * d + r] = std::conj(entries_[r * d + c]);
    }
    return out;
  }

  double max_abs() const noexcept {
    double best = 0.0;
    for (const Complex& z : entries_) best = std::max(best, std::abs(z));
    return best;
  }

  bool is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](Complex z) { return z == Complex{}; });
  }

  bool is_diagonal() const noexcept {
    const std::size_t d = dim();
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        if (r != c && entries_[r * d + c] != Complex{}) return false;
      }
    }
    return true;
  }

  WindowMatrix& operator+=(const WindowMatrix& other) {
    require_same_window(other);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
  }

  WindowMatrix& operator-=(const WindowMatrix& other) {
    require_same_window(other);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
  }

  WindowMatrix& operator*=(Complex scale) {
    for (Complex& z : entries_) z *= scale;
    return *this;
  }

  friend WindowMatrix operator+(WindowMatrix a, const WindowMatrix& b) { return a += b; }
  friend WindowMatrix operator-(WindowMatrix a, const WindowMatrix& b) { return a -= b; }
  friend WindowMatrix operator*(Complex s, WindowMatrix a) { return a *= s; }
  friend WindowMatrix operator*(WindowMatrix a, Complex s) { return a *= s; }
  friend bool operator==(const WindowMatrix&, const WindowMatrix&) = default;

  void require_same_window(const WindowMatrix& other) const {
    if (other.radius_ != radius_) {
      std::ostringstream msg;
      msg << "window radii differ (" << radius_ << " vs " << other.radius_ << ")";
      throw Error(ErrorCode::WindowMismatch, msg.str());
    }
  }

 private:
  static Index check_radius(Index radius) {
    if (radius < 0) throw Error(ErrorCode::InvalidArgument, "window radius must be nonnegative");
    return radius;
  }
  static std::size_t size_for(Index radius) {
    const auto d = static_cast<std::size_t>(2 * radius + 1);
    return d * d;
  }
  std::size_t offset(Index n, Index m) const {
    if (!contains(n) || !contains(m)) {
      std::ostringstream msg;
      msg << "index (" << n << ", " << m << ") outside window [-" << radius_ << ", " << radius_ << "]";
      throw Error(ErrorCode::IndexOutOfWindow, msg.str());
    }
    return static_cast<std::size_t>(n + radius_) * dim() + static_cast<std::size_t>(m + radius_);
  }

  Index radius_;
  std::vector<Complex> entries_;
};

/// Largest |a(n,m) - b(n,m)| over a shared window.
inline double max_abs_diff(const WindowMatrix& a, const WindowMatrix& b) {
  a.require_same_window(b);
  double best = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) best = std::max(best, std::abs(a.data()[i] - b.data()[i]));
  return best;
}

// Finitely supported sequence over Z; zero coefficients are never stored.
class FiniteVector {
 public:
  FiniteVector() = default;

  FiniteVector(std::initializer_list<std::pair<const Index, Complex>> init) {
    for (const auto& [n, v] : init) set(n, v);
  }

  static FiniteVector basis(Index n) { return FiniteVector{{n, 1.0}}; }

  Complex operator[](Index n) const {
    const auto it = coeffs_.find(n);
    return it == coeffs_.end() ? Complex{} : it->second;
  }

  void set(Index n, Complex value) {
    if (!is_finite(value)) throw Error(ErrorCode::NonFiniteEntry, "vector coefficient is not finite");
    if (value == Complex{}) {
      coeffs_.erase(n);
    } else {
      coeffs_[n] = value;
    }
  }

  const std::map<Index, Complex>& coefficients() const noexcept { return coeffs_; }
  bool empty() const noexcept { return coeffs_.empty(); }
  std::size_t size() const noexcept { return coeffs_.size(); }

  // Smallest symmetric radius covering the support (0 when empty).
  Index covering_radius() const noexcept {
    if (coeffs_.empty()) return 0;
    return std::max(std::abs(coeffs_.begin()->first), std::abs(coeffs_.rbegin()->first));
  }

  FiniteVector scaled(Complex s) const {
    FiniteVector out;
    for (const auto& [n, v] : coeffs_) out.set(n, s * v);
    return out;
  }

  friend FiniteVector operator+(const FiniteVector& a, const FiniteVector& b) {
    FiniteVector out = a;
    for (const auto& [n, v] : b.coeffs_) out.set(n, out[n] + v);
    return out;
  }

  friend bool operator==(const FiniteVector&, const FiniteVector&) = default;

 private:
  std::map<Index, Complex> coeffs_;
};

/// <a|b>, conjugate-linear in the first argument.
inline Complex inner(const FiniteVector& a, const FiniteVector& b) {
  const auto& small = a.size() <= b.size() ? a.coefficients() : b.coefficients();
  Complex sum{};
  for (const auto& [n, unused] : small) sum += std::conj(a[n]) * b[n];
  return sum;
}

enum class PNorm { One, Two, Inf };

inline double vector_p_norm(const FiniteVector& v, PNorm p) {
  double acc = 0.0;
  for (const auto& [n, z] : v.coefficients()) {
    const double mag = std::abs(z);
    switch (p) {
      case PNorm::One: acc += mag; break;
      case PNorm::Two: acc = std::hypot(acc, mag); break;
      case PNorm::Inf: acc = std::max(acc, mag); break;
    }
  }
  return acc;
}

inline WindowMatrix schur_product(const WindowMatrix& a, const WindowMatrix& b) {
  a.require_same_window(b);
  std::vector<Complex> out(a.data().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data()[i] * b.data()[i];
  return WindowMatrix(a.radius(), std::move(out));
}

/// Entry (n, m) multiplied by e^{i(n-m)theta}: the action of e^{i theta Z} (.) e^{-i theta Z}.
inline WindowMatrix conjugate_by_phase(const WindowMatrix& a, double theta) {
  const Index r = a.radius();
  std::vector<Complex> phase(static_cast<std::size_t>(4 * r + 1));
  for (Index k = -2 * r; k <= 2 * r; ++k) phase[static_cast<std::size_t>(k + 2 * r)] = std::polar(1.0, static_cast<double>(k) * theta);
  return WindowMatrix::from_generator(r, [&](Index n, Index m) {
    return phase[static_cast<std::size_t>(n - m + 2 * r)] * a(n, m);
  });
}

inline std::vector<Complex> multiply(const WindowMatrix& a, std::span<const Complex> x) {
  const std::size_t d = a.dim();
  std::vector<Complex> y(d);
  const Complex* row = a.data().data();
  for (std::size_t r = 0; r < d; ++r, row += d) {
    Complex acc{};
    for (std::size_t c = 0; c < d; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
  return y;
}

inline std::vector<Complex> multiply_adjoint(const WindowMatrix& a, std::span<const Complex> y) {
  const std::size_t d = a.dim();
  std::vector<Complex> x(d);
  const Complex* row = a.data().data();
  for (std::size_t r = 0; r < d; ++r, row += d) {
    const Complex yr = y[r];
    if (yr == Complex{}) continue;
    for (std::size_t c = 0; c < d; ++c) x[c] += std::conj(row[c]) * yr;
  }
  return x;
}

inline double euclidean_norm(std::span<const Complex> x) {
  double scale = 0.0;
  double ssq = 1.0;
  for (const Complex& z : x) {
    for (double part : {z.real(), z.imag()}) {
      const double mag = std::abs(part);
      if (mag == 0.0) continue;
      if (scale < mag) {
        ssq = 1.0 + ssq * (scale / mag) * (scale / mag);
        scale = mag;
      } else {
        ssq += (mag / scale) * (mag / scale);
      }
    }
  }
  return scale * std::sqrt(ssq);
}

inline double frobenius_norm(const WindowMatrix& a) { return euclidean_norm(a.data()); }

struct PowerIterationOptions {
  double relative_tolerance = 1e-12;
  std::size_t max_iterations = 100000;
  std::size_t max_restarts = 3;
  std::uint64_t seed = 0;
};

struct PowerIterationResult {
  double value = 0.0;  // largest singular value estimate
  std::vector<Complex> vector;  // unit right singular vector estimate
  std::size_t iterations = 0;
  std::size_t restarts = 0;
  bool converged = false;
};

namespace detail {

inline std::vector<Complex> seeded_start(std::size_t d, std::uint64_t seed) {
  Rng rng(0x9e3779b97f4a7c15ULL ^ seed);
  std::vector<Complex> x(d);
  for (auto& z : x) z = Complex(1.0 + 0.1 * (rng.uniform() - 0.5), 0.1 * (rng.uniform() - 0.5));
  return x;
}

inline bool normalize_in_place(std::vector<Complex>& x) {
  const double nrm = euclidean_norm(x);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) return false;
  for (auto& z : x) z /= nrm;
  return true;
}

}  // namespace detail

// Power iteration on the Gram form a* a. The Rayleigh quotient ||a x||^2 of
// the normalized iterate rises monotonically; iteration stops once the
// projected remaining rise (geometric extrapolation from the last two
// increments) is below the relative tolerance. `budget` caps iterations.
inline PowerIterationResult power_iterate(const WindowMatrix& a, std::vector<Complex> x, std::size_t budget,
                                          double relative_tolerance) {
  PowerIterationResult out;
  if (!detail::normalize_in_place(x)) return out;
  constexpr double kFloor = 8.0 * std::numeric_limits<double>::epsilon();
  double lambda_prev = -1.0;
  double delta_prev = -1.0;
  for (std::size_t it = 1; it <= budget; ++it) {
    const std::vector<Complex> y = multiply(a, x);
    const double ynorm = euclidean_norm(y);
    const double lambda = ynorm * ynorm;
    std::vector<Complex> z = multiply_adjoint(a, y);
    out.iterations = it;
    out.value = ynorm;
    if (!detail::normalize_in_place(z)) {
      // a x = 0: either a is zero or the iterate left the dominant space.
      out.vector = std::move(x);
      out.converged = a.is_zero();
      return out;
    }
    x = std::move(z);
    if (lambda_prev >= 0.0) {
      const double delta = lambda - lambda_prev;
      if (delta <= kFloor * lambda) {
        out.converged = true;
        break;
      }
      if (delta_prev > 0.0) {
        const double rate = std::min(delta / delta_prev, 1.0 - 1e-9);
        const double remaining = delta * rate / (1.0 - rate);
        if (remaining <= relative_tolerance * lambda && delta <= relative_tolerance * lambda) {
          out.converged = true;
          break;
        }
      }
      delta_prev = delta;
    }
    lambda_prev = lambda;
  }
  out.value = euclidean_norm(multiply(a, x));
  out.vector = std::move(x);
  return out;
}

// Lanczos on the Gram form a* a: Rayleigh-Ritz over the Krylov space of the
// power iterates, with full reorthogonalization. The top Ritz value never
// exceeds sigma_max^2 and converges even when the leading singular values
// cluster, where the plain Rayleigh quotient stalls. Stops once the Ritz
// residual and the last change are both below the relative tolerance, or
// when the Krylov space becomes invariant.
inline PowerIterationResult lanczos_top(const WindowMatrix& a, std::vector<Complex> start, std::size_t budget,
                                        double relative_tolerance) {
  PowerIterationResult out;
  const std::size_t d = a.dim();
  if (!detail::normalize_in_place(start)) return out;
  const double breakdown = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, a.max_abs() * a.max_abs()) *
                           static_cast<double>(d);
  std::vector<std::vector<Complex>> basis{std::move(start)};
  std::vector<double> alpha;
  std::vector<double> beta;
  double theta_prev = -1.0;
  Eigen::VectorXd ritz;
  auto inner_product = [](const std::vector<Complex>& x, const std::vector<Complex>& y) {
    Complex s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
  };
  for (std::size_t m = 1; m <= std::min(budget, d); ++m) {
    std::vector<Complex> w = multiply_adjoint(a, multiply(a, basis.back()));
    alpha.push_back(inner_product(basis.back(), w).real());
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) {
        const Complex h = inner_product(q, w);
        for (std::size_t i = 0; i < d; ++i) w[i] -= h * q[i];
      }
    }
    const double b = euclidean_norm(w);
    out.iterations = m;

    const auto mm = static_cast<Eigen::Index>(m);
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), mm);
    Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(beta.data(), mm - 1))
                                : Eigen::VectorXd(0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const double theta = tri.eigenvalues()(mm - 1);
    ritz = tri.eigenvectors().col(mm - 1);
    const double residual = b * std::abs(ritz(mm - 1));

    const bool invariant = b <= breakdown || m == d;
    const bool settled = theta > 0.0 && residual <= relative_tolerance * theta &&
                         std::abs(theta - theta_prev) <= relative_tolerance * theta;
    if (invariant || settled) {
      out.converged = theta > 0.0 || a.is_zero();
      break;
    }
    theta_prev = theta;
    beta.push_back(b);
    for (auto& z : w) z /= b;
    basis.push_back(std::move(w));
  }
  std::vector<Complex> v(d);
  for (std::size_t j = 0; j < static_cast<std::size_t>(ritz.size()); ++j) {
    for (std::size_t i = 0; i < d; ++i) v[i] += ritz(static_cast<Eigen::Index>(j)) * basis[j][i];
  }
  detail::normalize_in_place(v);
  out.value = euclidean_norm(multiply(a, v));
  out.vector = std::move(v);
  return out;
}

namespace detail {

// At most one nonzero per row and per column (diagonals, shifted diagonals,
// permutations): the singular values are the moduli of the nonzeros.
inline bool is_monomial_pattern(const WindowMatrix& a) {
  const std::size_t d = a.dim();
  std::vector<char> col_used(d, 0);
  for (std::size_t r = 0; r < d; ++r) {
    bool row_used = false;
    for (std::size_t c = 0; c < d; ++c) {
      if (a.at_position(r, c) == Complex{}) continue;
      if (row_used || col_used[c]) return false;
      row_used = true;
      col_used[c] = 1;
    }
  }
  return true;
}

}  // namespace detail

inline PowerIterationResult operator_norm_detailed(const WindowMatrix& a, const PowerIterationOptions& opts = {}) {
  PowerIterationResult out;
  if (detail::is_monomial_pattern(a)) {
    std::size_t best_col = 0;
    double best = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r) {
      for (std::size_t c = 0; c < a.dim(); ++c) {
        const double mag = std::abs(a.at_position(r, c));
        if (mag > best) {
          best = mag;
          best_col = c;
        }
      }
    }
    out.value = best;
    out.vector.assign(a.dim(), Complex{});
    out.vector[best_col] = 1.0;
    out.converged = true;
    return out;
  }
  std::size_t used = 0;
  for (std::size_t attempt = 0; attempt <= opts.max_restarts; ++attempt) {
    PowerIterationResult run = lanczos_top(a, detail::seeded_start(a.dim(), opts.seed + attempt),
                                           opts.max_iterations - used, opts.relative_tolerance);
    used += run.iterations;
    run.iterations = used;
    run.restarts = attempt;
    if (run.converged && run.value > 0.0) return run;
    out = std::move(run);
    if (used >= opts.max_iterations) break;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "largest singular value not resolved after " << out.iterations << " iterations and " << out.restarts
      << " restarts; last estimate " << out.value;
  throw Error(ErrorCode::NoConvergence, msg.str());
}

/// Largest singular value (the (2,2) operator norm) of the window matrix.
inline double operator_norm(const WindowMatrix& a, const PowerIterationOptions& opts = {}) {
  return operator_norm_detailed(a, opts).value;
}

inline double max_row_norm(const WindowMatrix& a, PNorm p) {
  const std::size_t d = a.dim();
  double best = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      const double mag = std::abs(a.at_position(r, c));
      acc = p == PNorm::One ? acc + mag : p == PNorm::Two ? std::hypot(acc, mag) : std::max(acc, mag);
    }
    best = std::max(best, acc);
  }
  return best;
}

inline double max_column_norm(const WindowMatrix& a, PNorm p) {
  const std::size_t d = a.dim();
  double best = 0.0;
  for (std::size_t c = 0; c < d; ++c) {
    double acc = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      const double mag = std::abs(a.at_position(r, c));
      acc = p == PNorm::One ? acc + mag : p == PNorm::Two ? std::hypot(acc, mag) : std::max(acc, mag);
    }
    best = std::max(best, acc);
  }
  return best;
}

/// (p, q) operator norm from l_p to l_q for the supported pairs
/// (1,2), (1,inf), (2,2), (2,inf), (inf,inf).
inline double pq_norm(const WindowMatrix& a, PNorm p, PNorm q, const PowerIterationOptions& opts = {}) {
  if (p == PNorm::One && q == PNorm::Two) return max_column_norm(a, PNorm::Two);
  if (p == PNorm::One && q == PNorm::Inf) return a.max_abs();
  if (p == PNorm::Two && q == PNorm::Two) return operator_norm(a, opts);
  if (p == PNorm::Two && q == PNorm::Inf) return max_row_norm(a, PNorm::Two);
  if (p == PNorm::Inf && q == PNorm::Inf) return max_row_norm(a, PNorm::One);
  throw Error(ErrorCode::UnsupportedNormPair, "supported (p,q): (1,2) (1,inf) (2,2) (2,inf) (inf,inf)");
}

inline Eigen::MatrixXcd to_eigen(const WindowMatrix& a) {
  const auto d = static_cast<Eigen::Index>(a.dim());
  Eigen::MatrixXcd out(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) out(r, c) = a.at_position(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  }
  return out;
}

/// Ascending eigenvalues of the Hermitian part (a + a*)/2.
inline std::vector<double> hermitian_eigenvalues(const WindowMatrix& a) {
  const Eigen::MatrixXcd m = to_eigen(a);
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline bool is_hermitian(const WindowMatrix& a, double abs_tol) {
  const std::size_t d = a.dim();
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = r; c < d; ++c) {
      if (std::abs(a.at_position(r, c) - std::conj(a.at_position(c, r))) > abs_tol) return false;
    }
  }
  return true;
}

// Hermiticity is checked first; both tests use tol * max|entry|.
inline bool is_psd(const WindowMatrix& a, double tol = 1e-10) {
  if (tol < 0.0) throw Error(ErrorCode::InvalidArgument, "tolerance must be nonnegative");
  double scale = a.max_abs();
  if (scale == 0.0) scale = 1.0;
  if (!is_hermitian(a, tol * scale)) return false;
  return hermitian_eigenvalues(a).front() >= -tol * scale;
}

}  // namespace covop
