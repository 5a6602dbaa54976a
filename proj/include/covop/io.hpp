#pragma once

// CSV formats (matrices, vectors, vector tables, phases, densities, sweeps)
// and the family-spec mini-language. All reals are written with 17
// significant digits, so every write/read cycle is bit-exact.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "covop/core.hpp"
#include "covop/reconstruct.hpp"
#include "covop/structure.hpp"

namespace covop::io {

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline double parse_real(std::string_view field, std::size_t line_no) {
  const std::string tmp(field);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad number '" + tmp + "'");
  }
  return v;
}

inline Index parse_index(std::string_view field, std::size_t line_no) {
  const std::string tmp(field);
  char* end = nullptr;
  const long long v = std::strtoll(tmp.c_str(), &end, 10);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad index '" + tmp + "'");
  }
  return static_cast<Index>(v);
}

// Rows of a CSV whose header must equal one of `headers`; returns the
// matched header position and the data rows (blank lines skipped).
struct Table {
  std::size_t header = 0;
  std::vector<std::pair<std::size_t, std::vector<std::string_view>>> rows;
  std::vector<std::string> storage;
};

inline Table read_table(std::istream& in, const std::vector<std::string_view>& headers) {
  Table t;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<std::size_t> numbers;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (!have_header) {
      const std::string_view h = trim(line);
      std::size_t i = 0;
      for (; i < headers.size(); ++i) {
        if (h == headers[i]) break;
      }
      if (i == headers.size()) throw Error(ErrorCode::ParseError, "unexpected CSV header '" + std::string(h) + "'");
      t.header = i;
      have_header = true;
      continue;
    }
    t.storage.push_back(line);
    numbers.push_back(line_no);
  }
  if (!have_header) throw Error(ErrorCode::ParseError, "empty CSV");
  const std::size_t width = split(headers[t.header]).size();
  for (std::size_t i = 0; i < t.storage.size(); ++i) {
    auto fields = split(t.storage[i]);
    if (fields.size() != width) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(numbers[i]) + ": expected " +
                                             std::to_string(width) + " fields");
    }
    t.rows.emplace_back(numbers[i], std::move(fields));
  }
  return t;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
  return in;
}

}  // namespace detail

// ---- matrices: n,m,re,im ------------------------------------------------

inline void write_matrix_csv(std::ostream& out, const WindowMatrix& a) {
  out << "n,m,re,im\n";
  for (Index n = -a.radius(); n <= a.radius(); ++n) {
    for (Index m = -a.radius(); m <= a.radius(); ++m) {
      const Complex z = a(n, m);
      out << n << ',' << m << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
    }
  }
}

/// Missing entries are zero; the radius defaults to the largest |index| present.
inline WindowMatrix read_matrix_csv(std::istream& in, std::optional<Index> radius = std::nullopt) {
  const detail::Table t = detail::read_table(in, {"n,m,re,im"});
  std::vector<std::tuple<Index, Index, Complex>> entries;
  Index reach = 0;
  for (const auto& [line_no, f] : t.rows) {
    const Index n = detail::parse_index(f[0], line_no);
    const Index m = detail::parse_index(f[1], line_no);
    entries.emplace_back(n, m, Complex(detail::parse_real(f[2], line_no), detail::parse_real(f[3], line_no)));
    reach = std::max({reach, std::abs(n), std::abs(m)});
  }
  WindowMatrix a(radius.value_or(reach));
  for (const auto& [n, m, z] : entries) {
    if (!a.contains(n) || !a.contains(m)) {
      throw Error(ErrorCode::IndexOutOfWindow, "entry (" + std::to_string(n) + "," + std::to_string(m) +
                                                   ") outside radius " + std::to_string(a.radius()));
    }
    a.set(n, m, z);
  }
  return a;
}

// ---- vectors: n,re,im ---------------------------------------------------

inline void write_vector_csv(std::ostream& out, const FiniteVector& v) {
  out << "n,re,im\n";
  for (const auto& [n, z] : v.coefficients()) {
    out << n << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
  }
}

inline FiniteVector read_vector_csv(std::istream& in) {
  const detail::Table t = detail::read_table(in, {"n,re,im"});
  FiniteVector v;
  for (const auto& [line_no, f] : t.rows) {
    const Index n = detail::parse_index(f[0], line_no);
    v.set(n, v[n] + Complex(detail::parse_real(f[1], line_no), detail::parse_real(f[2], line_no)));
  }
  return v;
}

// ---- vector tables: n,j,re,im (component j of psi_n) ---------------------

inline void write_vector_table_csv(std::ostream& out, const std::map<Index, FiniteVector>& rows) {
  out << "n,j,re,im\n";
  for (const auto& [n, v] : rows) {
    for (const auto& [j, z] : v.coefficients()) {
      out << n << ',' << j << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
    }
  }
}

inline std::map<Index, FiniteVector> read_vector_table_csv(std::istream& in) {
  const detail::Table t = detail::read_table(in, {"n,j,re,im"});
  std::map<Index, FiniteVector> rows;
  for (const auto& [line_no, f] : t.rows) {
    const Index n = detail::parse_index(f[0], line_no);
    const Index j = detail::parse_index(f[1], line_no);
    FiniteVector& v = rows[n];
    v.set(j, v[j] + Complex(detail::parse_real(f[2], line_no), detail::parse_real(f[3], line_no)));
  }
  return rows;
}

// ---- phases: n,phase or n,re,im with im = 0 ------------------------------

inline PhaseTable read_phases_csv(std::istream& in) {
  const detail::Table t = detail::read_table(in, {"n,phase", "n,re,im"});
  PhaseTable phases;
  for (const auto& [line_no, f] : t.rows) {
    const Index n = detail::parse_index(f[0], line_no);
    if (t.header == 1 && detail::parse_real(f[2], line_no) != 0.0) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": phase must be real");
    }
    phases[n] = detail::parse_real(f[1], line_no);
  }
  return phases;
}

// ---- densities and sweeps ------------------------------------------------

inline void write_samples_csv(std::ostream& out, const TrigPolynomial& f, std::size_t points) {
  if (points == 0) throw Error(ErrorCode::InvalidArgument, "grid must have at least one point");
  out << "theta,re,im\n";
  const double h = kTwoPi / static_cast<double>(points);
  for (std::size_t j = 0; j < points; ++j) {
    const double theta = h * static_cast<double>(j);
    const Complex z = f(theta);
    out << format_double(theta) << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
  }
}

inline void write_reconstruction_csv(std::ostream& out, const std::vector<ReconstructionRow>& rows) {
  out << "M,entry_dev,l1_err\n";
  for (const ReconstructionRow& r : rows) {
    out << r.m_terms << ',' << format_double(r.entry_dev) << ',' << format_double(r.l1_err) << '\n';
  }
}

// ---- family specs --------------------------------------------------------

// `family=<name> key=value ...` (the leading `family=` is optional). Paths
// are resolved relative to `base`.
struct FamilySpec {
  std::string name;
  std::map<std::string, std::string> params;
};

inline FamilySpec parse_family_spec(std::string_view text) {
  FamilySpec spec;
  std::istringstream words{std::string(text)};
  std::string word;
  bool first = true;
  while (words >> word) {
    const auto eq = word.find('=');
    if (first) {
      first = false;
      if (eq == std::string::npos) {
        spec.name = word;
        continue;
      }
      if (word.substr(0, eq) == "family") {
        spec.name = word.substr(eq + 1);
        continue;
      }
    }
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::ParseError, "expected key=value in family spec, got '" + word + "'");
    }
    spec.params[word.substr(0, eq)] = word.substr(eq + 1);
  }
  if (spec.name.empty()) throw Error(ErrorCode::ParseError, "family spec names no family");
  return spec;
}

namespace detail {

inline const std::string& require(const FamilySpec& spec, const std::string& key) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end()) {
    throw Error(ErrorCode::InvalidArgument, "family '" + spec.name + "' needs " + key + "=<...>");
  }
  return it->second;
}

inline std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace detail

inline StructureMatrix make_family(const FamilySpec& spec, const std::filesystem::path& base = ".") {
  if (spec.name == "gram") {
    auto in = detail::open_input(detail::resolve(base, detail::require(spec, "vectors")));
    VectorTable table{read_vector_table_csv(in), {}};
    if (const auto it = spec.params.find("default"); it != spec.params.end()) {
      auto din = detail::open_input(detail::resolve(base, it->second));
      table.fallback = read_vector_csv(din);
    }
    return gram(std::move(table));
  }
  if (spec.name == "rank_one") {
    auto vin = detail::open_input(detail::resolve(base, detail::require(spec, "v")));
    auto uin = detail::open_input(detail::resolve(base, detail::require(spec, "u")));
    // finitely supported vectors lie in every space; declare them bounded
    return rank_one(GeneralizedVector::from_finite(read_vector_csv(vin), Membership::Hinf),
                    GeneralizedVector::from_finite(read_vector_csv(uin), Membership::Hinf));
  }
  if (spec.name == "phase") {
    auto in = detail::open_input(detail::resolve(base, detail::require(spec, "phases")));
    return phase_matrix(read_phases_csv(in));
  }
  if (spec.name == "dense") {
    auto in = detail::open_input(detail::resolve(base, detail::require(spec, "matrix")));
    std::optional<Index> radius;
    if (const auto it = spec.params.find("radius"); it != spec.params.end()) {
      radius = detail::parse_index(it->second, 0);
    }
    return dense(read_matrix_csv(in, radius));
  }
  return builtin(spec.name);
}

inline StructureMatrix make_family(std::string_view text, const std::filesystem::path& base = ".") {
  return make_family(parse_family_spec(text), base);
}

}  // namespace covop::io
