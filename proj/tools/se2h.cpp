// Batch front end: lattice, coeffs, reconstruct, plancherel, convolve, acceptance.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "se2h/acceptance.hpp"
#include "se2h/config.hpp"
#include "se2h/coset_series.hpp"
#include "se2h/module_action.hpp"
#include "se2h/test_functions.hpp"

namespace fs = std::filesystem;
using namespace se2h;

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& text) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !(out.flush())) {
    throw IoError("cannot write '" + path.string() + "'");
  }
  std::cout << path.string() << "\n";
}

struct Options {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> functions;
  std::optional<int> kmax;
  std::optional<double> rho_max;
  std::optional<int> grid;
  std::optional<int> band;
  bool print_config = false;
};

RunConfig resolve(const Options& o) {
  RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (o.kmax) cfg.k_max = *o.kmax;
  if (o.rho_max) cfg.rho_max = *o.rho_max;
  if (o.grid) cfg.grid_xy = cfg.grid_theta = *o.grid;
  if (o.band) cfg.band = *o.band;
  cfg.validate();
  return cfg;
}

std::string function_name(const Options& o, std::size_t i, const std::string& fallback) {
  return o.functions.size() > i ? o.functions[i] : fallback;
}

SpectralOptions spectral_options(const RunConfig& cfg) {
  SpectralOptions opt;
  opt.band_margin = cfg.band_margin;
  opt.tail_tolerance = cfg.tail_tolerance;
  return opt;
}

// Narrow theta windows are better resolved by Gauss-Legendre than by the
// equal-weight rule.
QuadratureSpec quadrature_for(const RunConfig& cfg, const GroupFunction& f) {
  QuadratureSpec q = cfg.quadrature();
  if (!f.box.full_circle()) {
    q.theta_scheme = AxisScheme::gauss_legendre;
  }
  return q;
}

std::string point_json(const CosetPoint& c) {
  return "[" + num(c.x()) + ", " + num(c.y()) + ", " + num(c.theta()) + "]";
}

int cmd_lattice(const RunConfig& cfg) {
  std::ostringstream out;
  out << "{\n  \"rho_max\": " << num(cfg.rho_max) << ",\n  \"shells\": [";
  const auto shells = enumerate_shells(cfg.rho_max);
  for (std::size_t i = 0; i < shells.size(); ++i) {
    const LatticeShell& s = shells[i];
    out << (i ? "," : "") << "\n    {\"rho_sq\": " << s.rho_sq << ", \"rho\": " << num(s.rho)
        << ", \"angles\": [";
    for (std::size_t j = 0; j < s.angles.size(); ++j) {
      out << (j ? ", " : "") << num(s.angles[j]);
    }
    out << "]}";
  }
  out << "\n  ]\n}\n";
  write_file(fs::path(cfg.out_dir) / "lattice.json", out.str());
  return 0;
}

int cmd_coeffs(const RunConfig& cfg, const std::string& name) {
  const TestFunction t = builtin(name);
  const QuadratureSpec q = quadrature_for(cfg, t.f);
  const BasisIndexBox box = BasisIndexBox::cube(cfg.k_max);
  // Every (k1, k2) of the box must lie on a shell.
  const double rho = std::max(1.0, std::sqrt(2.0) * cfg.k_max);
  const SpectralData data = spectral_data(t.f, cfg.k_max, rho, q, spectral_options(cfg));
  const CosetCoefficients spectral = coeff_spectral_table(data);
  const CosetCoefficients direct = coeff_direct_table(periodization(t.f), box, q);

  std::ostringstream csv;
  csv << "k1,k2,k3,re,im,abs_err\n";
  std::ostringstream json;
  json << "{\n  \"function\": \"" << name << "\",\n  \"lambda\": " << num(kCalibratedLambda)
       << ",\n  \"coefficients\": [";
  bool first = true;
  for (const LatticeVector& k : box.indices()) {
    const Complex s = spectral.at(k);
    const Complex d = direct.at(k);
    csv << k.k1 << "," << k.k2 << "," << k.k3 << "," << num(s.real()) << "," << num(s.imag())
        << "," << num(std::abs(s - kCalibratedLambda * d)) << "\n";
    json << (first ? "" : ",") << "\n    {\"k\": [" << k.k1 << ", " << k.k2 << ", " << k.k3
         << "], \"spectral\": [" << num(s.real()) << ", " << num(s.imag()) << "], \"direct\": ["
         << num(d.real()) << ", " << num(d.imag()) << "]}";
    first = false;
  }
  json << "\n  ]\n}\n";
  write_file(fs::path(cfg.out_dir) / ("coeffs_" + name + ".csv"), csv.str());
  write_file(fs::path(cfg.out_dir) / ("coeffs_" + name + ".json"), json.str());
  return 0;
}

int cmd_reconstruct(const RunConfig& cfg, const std::string& name) {
  const TestFunction t = builtin(name);
  const QuadratureSpec q = quadrature_for(cfg, t.f);
  const SpectralData data = spectral_data(t.f, cfg.k_max, cfg.rho_max, q, spectral_options(cfg));
  const SupportBox box = t.f.box.x.lo >= 0.0 && t.f.box.x.hi <= 1.0 && t.f.box.y.lo >= 0.0 &&
                                 t.f.box.y.hi <= 1.0
                             ? t.f.box
                             : fundamental_domain();
  const double inset_theta = box.full_circle() ? 0.0 : 0.2;
  const CosetFunction exact = periodization(t.f);
  std::ostringstream csv;
  csv << "x,y,theta,re,im,exact_re,exact_im,abs_err\n";
  for (const CosetPoint& c : interior_points(50, box, 0.05, inset_theta)) {
    const Complex v = kCalibratedLambdaRec * reconstruct_shells(data, c);
    const Complex e = exact(c);
    csv << num(c.x()) << "," << num(c.y()) << "," << num(c.theta()) << "," << num(v.real()) << ","
        << num(v.imag()) << "," << num(e.real()) << "," << num(e.imag()) << ","
        << num(std::abs(v - e)) << "\n";
  }
  write_file(fs::path(cfg.out_dir) / ("reconstruct_" + name + ".csv"), csv.str());
  return 0;
}

int cmd_plancherel(const RunConfig& cfg, const std::string& name) {
  const TestFunction t = builtin(name);
  const QuadratureSpec q = quadrature_for(cfg, t.f);
  const SpectralData data = spectral_data(t.f, cfg.k_max, cfg.rho_max, q, spectral_options(cfg));
  const PlancherelParts parts = plancherel_spectral(data);
  const double direct = plancherel_direct(periodization(t.f), q);
  const double scaled = parts.total() * kCalibratedLambdaRec * kCalibratedLambdaRec;
  std::ostringstream json;
  json << "{\n  \"function\": \"" << name << "\",\n  \"k_max\": " << cfg.k_max
       << ",\n  \"rho_max\": " << num(cfg.rho_max) << ",\n  \"direct\": " << num(direct)
       << ",\n  \"spectral_character\": " << num(parts.character)
       << ",\n  \"spectral_shells\": " << num(parts.shells)
       << ",\n  \"spectral_calibrated\": " << num(scaled)
       << ",\n  \"relative_error\": " << num(std::abs(scaled - direct) / direct) << "\n}\n";
  write_file(fs::path(cfg.out_dir) / ("plancherel_" + name + ".json"), json.str());
  return 0;
}

int cmd_convolve(const RunConfig& cfg, const std::string& n1, const std::string& n2) {
  const GroupFunction f1 = builtin(n1).f;
  const GroupFunction f2 = builtin(n2).f;
  QuadratureSpec q = cfg.quadrature();
  if (!f1.box.full_circle() || !f2.box.full_circle()) {
    q.theta_scheme = AxisScheme::gauss_legendre;
  }
  const SpectralData data =
      convolution_spectral_data(f1, f2, cfg.k_max, cfg.rho_max, q, spectral_options(cfg));
  const CosetFunction psi = periodization(f1);
  std::ostringstream csv;
  csv << "x,y,theta,direct_re,direct_im,series_re,series_im,abs_err\n";
  for (const CosetPoint& c : interior_points(5, fundamental_domain(), 0.1, 0.5)) {
    const Complex d = oslash(psi, f2, c, q);
    const Complex s = oslash_series(data, c, kCalibratedLambdaRec);
    csv << num(c.x()) << "," << num(c.y()) << "," << num(c.theta()) << "," << num(d.real()) << ","
        << num(d.imag()) << "," << num(s.real()) << "," << num(s.imag()) << ","
        << num(std::abs(s - d)) << "\n";
  }
  write_file(fs::path(cfg.out_dir) / ("convolve_" + n1 + "_" + n2 + ".csv"), csv.str());
  return 0;
}

int cmd_acceptance(const RunConfig& cfg) {
  const AcceptanceReport report = run_acceptance(cfg, [](const CriterionResult& r) {
    std::cout << summary_line(r) << std::endl;
  });
  write_file(fs::path(cfg.out_dir) / cfg.report, report_json(report));
  const bool ok = report.all_pass();
  std::cout << (ok ? "acceptance: all criteria pass" : "acceptance: FAILED") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier series on the coset space Z^2\\SE(2)"};
  app.set_help_all_flag("--help-all");
  Options o;
  app.add_option("--config", o.config_path, "configuration file")->check(CLI::ExistingFile);
  app.add_flag("--print-config", o.print_config, "print the effective configuration and exit");

  auto common = [&](CLI::App* sub, bool with_function, std::size_t max_functions = 1) {
    sub->add_option("--out", o.out_dir, "output directory");
    sub->add_option("--kmax", o.kmax, "index box half-width / k3 range");
    sub->add_option("--rho-max", o.rho_max, "lattice shell cutoff");
    sub->add_option("--grid", o.grid, "quadrature nodes per axis");
    sub->add_option("--band", o.band, "band N for the round trip");
    if (with_function) {
      sub->add_option("--function", o.functions, "builtin test function name")
          ->expected(1, static_cast<int>(max_functions));
    }
  };
  app.add_option("--out", o.out_dir, "output directory");
  CLI::App* lattice = app.add_subcommand("lattice", "lattice shells as JSON");
  common(lattice, false);
  CLI::App* coeffs = app.add_subcommand("coeffs", "coefficient table (CSV and JSON)");
  common(coeffs, true);
  CLI::App* recon = app.add_subcommand("reconstruct", "reconstruction errors (CSV)");
  common(recon, true);
  CLI::App* planch = app.add_subcommand("plancherel", "Plancherel comparison (JSON)");
  common(planch, true);
  CLI::App* conv = app.add_subcommand("convolve", "convolution series vs direct (CSV)");
  common(conv, true, 2);
  CLI::App* accept = app.add_subcommand("acceptance", "run the acceptance suite");
  common(accept, false);
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const RunConfig cfg = resolve(o);
    if (o.print_config) {
      std::cout << print_config(cfg);
      return 0;
    }
    if (*lattice) return cmd_lattice(cfg);
    if (*coeffs) return cmd_coeffs(cfg, function_name(o, 0, "bump"));
    if (*recon) return cmd_reconstruct(cfg, function_name(o, 0, "bump"));
    if (*planch) return cmd_plancherel(cfg, function_name(o, 0, "bump"));
    if (*conv) {
      return cmd_convolve(cfg, function_name(o, 0, "narrow1"), function_name(o, 1, "narrow2"));
    }
    if (*accept) return cmd_acceptance(cfg);
    std::cerr << app.help();
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
