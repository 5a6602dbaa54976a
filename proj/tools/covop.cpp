// covop: command-line front end for covariant operator measures.
//
//   covop matrix      --family F --window N
//   covop measure     --family F --set ARCS --window N
//   covop density     --family F --phi CSV --psi CSV [--cesaro M] [--grid P]
//   covop moment      --family F (--s S | --cyclic K) --window N
//   covop norm        --family F --window N [--norm 1inf|m|o|f] [--grid P]
//   covop reconstruct --family F --set ARCS --window N --M-sweep LIST [--phi CSV --psi CSV]
//   covop report      --family F --sweep LIST
//   covop transform   --family F --z RE,IM --window N
//
// Exit status: 0 on success, 1 on a numerical or input error (the error
// name is printed), 2 on a usage error.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "covop/covop.hpp"
#include "covop/io.hpp"

namespace {

using namespace covop;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string family;
  std::vector<std::string> params;
  Index window = -1;
  std::string out;
  std::uint64_t seed = 0;
  std::string format = "text";
};

void add_common(CLI::App* cmd, Common& c, bool needs_window) {
  cmd->add_option("--family", c.family, "family name or spec, e.g. sign or \"dense matrix=m.csv\"")->required();
  cmd->add_option("--param", c.params, "extra family parameter key=value (repeatable)");
  auto* w = cmd->add_option("--window", c.window, "window radius N (indices -N..N)")->check(CLI::NonNegativeNumber);
  if (needs_window) w->required();
  cmd->add_option("--out", c.out, "output file (default stdout)");
  cmd->add_option("--seed", c.seed, "seed for randomized search")->envname("COVOP_SEED");
  cmd->add_option("--format", c.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
}

StructureMatrix load_family(const Common& c) {
  std::string spec = c.family;
  for (const std::string& p : c.params) spec += " " + p;
  return io::make_family(spec);
}

// Shortest representation that reads back to the same double.
std::string shortest(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::vector<Index> parse_list(const std::string& text, const char* flag) {
  std::vector<Index> out;
  for (std::string_view f : io::detail::split(text)) {
    Index v = 0;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size()) {
      throw UsageError(std::string(flag) + ": bad integer list '" + text + "'");
    }
    out.push_back(v);
  }
  return out;
}

Complex parse_complex(const std::string& text) {
  const auto f = io::detail::split(text);
  if (f.empty() || f.size() > 2) throw UsageError("--z: expected re,im");
  try {
    return {io::detail::parse_real(f[0], 0), f.size() == 2 ? io::detail::parse_real(f[1], 0) : 0.0};
  } catch (const Error&) {
    throw UsageError("--z: expected re,im, got '" + text + "'");
  }
}

FiniteVector load_vector(const std::string& path) {
  auto in = io::detail::open_input(path);
  return io::read_vector_csv(in);
}

// Writes to --out when given, else stdout.
void emit(const Common& c, const std::string& body) {
  if (c.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + c.out + "'");
  f << body;
}

std::string matrix_text(const WindowMatrix& a) {
  std::ostringstream s;
  io::write_matrix_csv(s, a);
  return s.str();
}

std::string norm_text(const StructureMatrix& c, const Common& o, const std::string& which, std::size_t grid) {
  const Index n = o.window;
  const bool csv = o.format == "csv";
  std::ostringstream s;
  if (which == "1inf") {
    const double v = sup_entry(c, n);
    s << (csv ? "norm_1inf\n" : "") << shortest(v) << '\n';
  } else if (which == "m") {
    const MultiplierBounds b = multiplier_bounds(c, n, o.seed);
    s << (csv ? "multiplier_lower,multiplier_upper\n" : "") << shortest(b.lower) << (csv ? "," : " ")
      << shortest(b.upper) << '\n';
  } else if (which == "o") {
    const ObservableEstimate e = observable_norm_estimate(c, n, grid, o.seed);
    if (csv) {
      s << "observable_lower,witness\n" << shortest(e.value) << ",\"" << format_arcs(e.witness) << "\"\n";
    } else {
      s << shortest(e.value) << ' ' << format_arcs(e.witness) << "  (lower-bound estimate)\n";
    }
  } else if (which == "f") {
    const double v = first_moment_norm(c, n);
    s << (csv ? "first_moment\n" : "") << shortest(v) << '\n';
  } else {
    const NormReport r = norm_report(c, n, grid, o.seed);
    const std::pair<const char*, double> rows[] = {{"norm_1inf", r.norm_1inf},
                                                   {"multiplier_lower", r.multiplier_lower},
                                                   {"multiplier_upper", r.multiplier_upper},
                                                   {"observable_lower", r.observable_lower},
                                                   {"first_moment", r.first_moment}};
    if (csv) s << "field,value\n";
    for (const auto& [name, v] : rows) s << name << (csv ? "," : ": ") << shortest(v) << '\n';
    s << "observable_witness" << (csv ? ",\"" : ": ") << format_arcs(r.observable_witness) << (csv ? "\"" : "")
      << '\n';
  }
  return s.str();
}

int run(int argc, char** argv) {
  CLI::App app{"covop: covariant generalized operator measures on Z"};
  app.require_subcommand(1);
  Common o;

  auto* matrix = app.add_subcommand("matrix", "emit the structure matrix on a window");
  add_common(matrix, o, true);

  std::string set = "full";
  auto* measure = app.add_subcommand("measure", "emit C * i(X) on a window");
  add_common(measure, o, true);
  measure->add_option("--set", set, "arcs lo:hi,lo:hi or full/empty")->required();

  std::string phi_path;
  std::string psi_path;
  Index cesaro = 0;
  std::size_t grid = 0;
  auto* dens = app.add_subcommand("density", "sample the density of <phi|G(.)psi> (or its Cesaro mean)");
  add_common(dens, o, false);
  dens->add_option("--phi", phi_path, "phi as n,re,im CSV")->required();
  dens->add_option("--psi", psi_path, "psi as n,re,im CSV")->required();
  dens->add_option("--cesaro", cesaro, "Cesaro order M")->check(CLI::PositiveNumber);
  dens->add_option("--grid", grid, "sample count (default 720)")->check(CLI::PositiveNumber);

  int s_power = -1;
  Index cyclic = 0;
  auto* moment = app.add_subcommand("moment", "emit Theta_s or V_k");
  add_common(moment, o, true);
  auto* s_opt = moment->add_option("--s", s_power, "polynomial moment order s")->check(CLI::NonNegativeNumber);
  auto* k_opt = moment->add_option("--cyclic", cyclic, "cyclic moment index k");
  s_opt->excludes(k_opt);

  std::string which;
  auto* norm = app.add_subcommand("norm", "window norms of the structure matrix");
  add_common(norm, o, true);
  norm->add_option("--norm", which, "1inf, m, o or f (default: all)")->check(CLI::IsMember({"1inf", "m", "o", "f"}));
  norm->add_option("--grid", grid, "arc grid for the observable estimate (default 256)")->check(CLI::Range(8, 1 << 16));

  std::string m_sweep;
  auto* recon = app.add_subcommand("reconstruct", "Cesaro reconstruction error sweep");
  add_common(recon, o, true);
  recon->add_option("--set", set, "arcs lo:hi,lo:hi or full/empty")->required();
  recon->add_option("--M-sweep", m_sweep, "comma-separated Cesaro orders")->required();
  recon->add_option("--phi", phi_path, "phi as n,re,im CSV (default phi_0)");
  recon->add_option("--psi", psi_path, "psi as n,re,im CSV (default phi_0)");

  std::string n_sweep = "32,64,128,256";
  auto* report = app.add_subcommand("report", "extensibility report over a window sweep");
  add_common(report, o, false);
  report->add_option("--sweep", n_sweep, "comma-separated increasing windows");

  std::string z_text;
  auto* transform = app.add_subcommand("transform", "emit the exponential transform F(z)");
  add_common(transform, o, true);
  transform->add_option("--z", z_text, "complex point re,im with |z| < 1/pi")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const StructureMatrix c = load_family(o);
  if (*matrix) {
    emit(o, matrix_text(realize(c, o.window)));
  } else if (*measure) {
    emit(o, matrix_text(gom_matrix(c, parse_arcs(set), o.window)));
  } else if (*dens) {
    const FiniteVector phi = load_vector(phi_path);
    const FiniteVector psi = load_vector(psi_path);
    const TrigPolynomial f = cesaro > 0 ? cesaro_density(c, phi, psi, cesaro) : density(c, phi, psi);
    std::ostringstream s;
    io::write_samples_csv(s, f, grid > 0 ? grid : 720);
    emit(o, s.str());
  } else if (*moment) {
    if (s_opt->count() == 0 && k_opt->count() == 0) throw UsageError("moment: give --s S or --cyclic K");
    emit(o, matrix_text(s_opt->count() > 0 ? moment_matrix(c, s_power, o.window) : cyclic_moment(c, cyclic, o.window)));
  } else if (*norm) {
    emit(o, norm_text(c, o, which, grid > 0 ? grid : 256));
  } else if (*recon) {
    const FiniteVector phi = phi_path.empty() ? FiniteVector::basis(0) : load_vector(phi_path);
    const FiniteVector psi = psi_path.empty() ? FiniteVector::basis(0) : load_vector(psi_path);
    std::ostringstream s;
    io::write_reconstruction_csv(s, reconstruction_sweep(c, parse_arcs(set), o.window, parse_list(m_sweep, "--M-sweep"),
                                                         phi, psi));
    emit(o, s.str());
  } else if (*report) {
    const ExtensibilityReport rep = extensibility_report(c, parse_list(n_sweep, "--sweep"));
    emit(o, o.format == "csv" ? format_sweep_csv(rep.fits) : format_report_text(rep));
  } else if (*transform) {
    emit(o, matrix_text(exp_transform(c, parse_complex(z_text), o.window)));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const covop::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
