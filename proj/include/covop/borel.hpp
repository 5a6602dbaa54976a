#pragma once

// Finite unions of half-open arcs of [0, 2pi) and the Toeplitz matrix
// i(X)_{nm} = (1/2pi) \int_X e^{i(n-m)theta} dtheta evaluated in closed form.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "covop/core.hpp"

namespace covop {

struct Arc {
  double lo = 0.0;
  double hi = 0.0;
  double length() const noexcept { return hi - lo; }
  friend bool operator==(const Arc&, const Arc&) = default;
};

inline constexpr double kEmptyArcTolerance = 1e-15;
inline constexpr double kTouchTolerance = 1e-14;

namespace detail {

inline double reduce_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// Sorts and merges overlapping or touching arcs; drops empty ones.
inline std::vector<Arc> merge_arcs(std::vector<Arc> arcs) {
  std::erase_if(arcs, [](const Arc& a) { return !(a.hi > a.lo); });
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.lo < b.lo; });
  std::vector<Arc> out;
  for (const Arc& a : arcs) {
    if (!out.empty() && a.lo <= out.back().hi + kTouchTolerance) {
      out.back().hi = std::max(out.back().hi, a.hi);
    } else {
      out.push_back(a);
    }
  }
  for (Arc& a : out) {
    a.lo = std::max(a.lo, 0.0);
    a.hi = std::min(a.hi, kTwoPi);
  }
  return out;
}

}  // namespace detail

class BorelSet {
 public:
  BorelSet() = default;

  static BorelSet empty() { return {}; }
  static BorelSet full() { return BorelSet(std::vector<Arc>{{0.0, kTwoPi}}); }

  // Raw pairs are taken mod 2pi; a > b denotes a wrap-around arc, and a pair
  // spanning a whole turn (b - a >= 2pi) is the full circle.
  static BorelSet normalize(std::span<const std::pair<double, double>> raw) {
    std::vector<Arc> arcs;
    for (const auto& [a, b] : raw) {
      if (!std::isfinite(a) || !std::isfinite(b)) throw Error(ErrorCode::InvalidArgument, "arc endpoint not finite");
      if (b - a >= kTwoPi - kEmptyArcTolerance) {
        arcs.push_back({0.0, kTwoPi});
        continue;
      }
      const double lo = detail::reduce_angle(a);
      const double hi = detail::reduce_angle(b);
      const double gap = std::abs(lo - hi);
      if (gap <= kEmptyArcTolerance || kTwoPi - gap <= kEmptyArcTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "arc (" << a << ", " << b << ") is empty mod 2pi";
        throw Error(ErrorCode::EmptyArc, msg.str());
      }
      if (lo < hi) {
        arcs.push_back({lo, hi});
      } else {
        arcs.push_back({lo, kTwoPi});
        arcs.push_back({0.0, hi});
      }
    }
    return BorelSet(detail::merge_arcs(std::move(arcs)));
  }

  static BorelSet normalize(std::initializer_list<std::pair<double, double>> raw) {
    return normalize(std::span<const std::pair<double, double>>(raw.begin(), raw.size()));
  }

  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  bool is_empty() const noexcept { return arcs_.empty(); }
  bool is_full() const noexcept { return arcs_.size() == 1 && arcs_[0].lo == 0.0 && arcs_[0].hi == kTwoPi; }

  double measure() const noexcept {
    double total = 0.0;
    for (const Arc& a : arcs_) total += a.length();
    return total;
  }

  /// X + theta (mod 2pi).
  BorelSet shifted(double theta) const {
    if (is_full()) return full();
    const double t = detail::reduce_angle(theta);
    std::vector<Arc> out;
    for (const Arc& a : arcs_) {
      const double lo = a.lo + t;
      const double hi = a.hi + t;
      if (lo >= kTwoPi) {
        out.push_back({lo - kTwoPi, hi - kTwoPi});
      } else if (hi > kTwoPi) {
        out.push_back({lo, kTwoPi});
        out.push_back({0.0, hi - kTwoPi});
      } else {
        out.push_back({lo, hi});
      }
    }
    return BorelSet(detail::merge_arcs(std::move(out)));
  }

  friend bool operator==(const BorelSet&, const BorelSet&) = default;

 private:
  explicit BorelSet(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {}
  friend BorelSet complement(const BorelSet&);
  friend BorelSet set_union(const BorelSet&, const BorelSet&);
  friend BorelSet intersect(const BorelSet&, const BorelSet&);

  std::vector<Arc> arcs_;
};

inline BorelSet complement(const BorelSet& x) {
  std::vector<Arc> out;
  double cursor = 0.0;
  for (const Arc& a : x.arcs()) {
    if (a.lo > cursor) out.push_back({cursor, a.lo});
    cursor = a.hi;
  }
  if (cursor < kTwoPi) out.push_back({cursor, kTwoPi});
  return BorelSet(detail::merge_arcs(std::move(out)));
}

inline BorelSet set_union(const BorelSet& x, const BorelSet& y) {
  std::vector<Arc> all = x.arcs();
  all.insert(all.end(), y.arcs().begin(), y.arcs().end());
  return BorelSet(detail::merge_arcs(std::move(all)));
}

inline BorelSet intersect(const BorelSet& x, const BorelSet& y) {
  std::vector<Arc> out;
  std::size_t i = 0;
  std::size_t j = 0;
  const auto& a = x.arcs();
  const auto& b = y.arcs();
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].lo, b[j].lo);
    const double hi = std::min(a[i].hi, b[j].hi);
    if (hi > lo) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return BorelSet(detail::merge_arcs(std::move(out)));
}

inline double measure(const BorelSet& x) { return x.measure(); }

/// \int_X e^{ik theta} d theta, arc by arc.
inline Complex arc_integral(const BorelSet& x, Index k) {
  Complex sum{};
  if (k == 0) return x.measure();
  const double kd = static_cast<double>(k);
  // e^{ik 2pi} = 1 exactly; evaluating it in floating point would not be
  auto phase = [kd](double t) { return t == kTwoPi ? Complex(1.0) : std::polar(1.0, kd * t); };
  for (const Arc& a : x.arcs()) sum += (phase(a.hi) - phase(a.lo)) / Complex(0.0, kd);
  return sum;
}

/// i(X)_{n, n-k} = (1/2pi) \int_X e^{ik theta} d theta.
inline Complex interval_coefficient(const BorelSet& x, Index k) { return arc_integral(x, k) / kTwoPi; }

inline WindowMatrix interval_matrix(const BorelSet& x, Index radius) {
  const Index span = 2 * radius;
  std::vector<Complex> coeff(static_cast<std::size_t>(span + 1));
  for (Index k = 0; k <= span; ++k) coeff[static_cast<std::size_t>(k)] = interval_coefficient(x, k);
  return WindowMatrix::from_generator(radius, [&](Index n, Index m) {
    const Index k = n - m;
    return k >= 0 ? coeff[static_cast<std::size_t>(k)] : std::conj(coeff[static_cast<std::size_t>(-k)]);
  });
}

// Arc-set syntax: comma-separated "a:b" pairs in radians, or "full" / "empty".
inline BorelSet parse_arcs(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "full") return BorelSet::full();
  if (text == "empty" || text.empty()) return BorelSet::empty();
  std::vector<std::pair<double, double>> raw;
  auto parse_number = [&](std::string_view s) {
    s = trim(s);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw Error(ErrorCode::ParseError, "bad arc endpoint '" + std::string(s) + "'");
    }
    return value;
  };
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) throw Error(ErrorCode::ParseError, "arc '" + std::string(item) + "' lacks ':'");
    raw.emplace_back(parse_number(item.substr(0, colon)), parse_number(item.substr(colon + 1)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return BorelSet::normalize(raw);
}

inline std::string format_arcs(const BorelSet& x) {
  if (x.is_empty()) return "empty";
  if (x.is_full()) return "full";
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < x.arcs().size(); ++i) {
    if (i != 0) out << ',';
    out << x.arcs()[i].lo << ':' << x.arcs()[i].hi;
  }
  return out.str();
}

}  // namespace covop
