#include "se2h/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "se2h/irreps.hpp"
#include "se2h/module_action.hpp"
#include "se2h/special_functions.hpp"
#include "se2h/test_functions.hpp"

namespace se2h {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
    }
    out += c;
  }
  return out + "\"";
}

Check check(std::string name, double measured, double tolerance) {
  return {std::move(name), measured, tolerance, measured <= tolerance};
}

double frac(double v) { return v - std::floor(v); }

QuadratureSpec with_window_theta(QuadratureSpec q) {
  q.theta_scheme = AxisScheme::gauss_legendre;
  return q;
}

CosetCoefficients restrict_to(const CosetCoefficients& table, const BasisIndexBox& box) {
  CosetCoefficients out;
  for (const auto& [k, v] : table) {
    if (box.contains(k)) {
      out.set(k, v);
    }
  }
  return out;
}

// --- criteria -------------------------------------------------------------

CriterionResult matrix_elements(const RunConfig& cfg) {
  CriterionResult r{1, "matrix-element closed form vs circle quadrature", {}, 0, 10.0, ""};
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> idx(-8, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const int m = idx(rng);
    const int n = idx(rng);
    const double a = 3.0 * unit(rng);
    const double phi = kTwoPi * unit(rng);
    const double theta = kTwoPi * unit(rng);
    const RadialFrequency p(10.0 * (1.0 - unit(rng)));
    const GroupElement g = from_polar({a, phi, theta});
    worst = std::max(worst, std::abs(matrix_element(m, n, g, p) -
                                     matrix_element_oracle(m, n, g, p, 256)));
  }
  r.checks.push_back(check("max_abs_diff", worst, cfg.tol_matrix_element));
  return r;
}

CriterionResult round_trip(const RunConfig& cfg) {
  CriterionResult r{2, "group Fourier round trip, builtin bump", {}, 0, 300.0, ""};
  const TestFunction bump = builtin("bump");
  RadialSamples samples = sample_radial(bump.f, cfg.p_max, cfg.radial_nodes, cfg.band,
                                        cfg.quadrature());
  samples.tail_tolerance = cfg.inverse_tail_tolerance;
  double worst = 0.0;
  for (const CosetPoint& c : interior_points(20, bump.f.box, 0.05, 0.2)) {
    const GroupElement g = c.representative();
    worst = std::max(worst, std::abs(inverse_transform(samples, g) - bump.f(g)));
  }
  r.checks.push_back(check("max_abs_err", worst, cfg.tol_round_trip));
  r.note = "p_max=" + fmt17(cfg.p_max) + " radial_nodes=" + std::to_string(cfg.radial_nodes) +
           " band=" + std::to_string(cfg.band);
  return r;
}

CriterionResult coefficient_equivalence(const RunConfig& cfg, const SpectralOptions& opt,
                                        double& lambda) {
  CriterionResult r{3, "coefficient equivalence, spectral vs direct", {}, 0, 600.0, ""};
  const TestFunction bump = builtin("bump");
  const QuadratureSpec q = cfg.quadrature();
  const BasisIndexBox box = BasisIndexBox::cube(3);
  const SpectralData data = spectral_data(bump.f, 3, std::sqrt(18.0), q, opt);
  const CosetCoefficients spectral = restrict_to(coeff_spectral_table(data), box);
  const CosetCoefficients direct = coeff_direct_table(periodization(bump.f), box, q);
  const NormalizationAudit audit = audit_normalization(spectral, direct, 1e-6);
  lambda = audit.lambda;
  r.checks.push_back(check("lambda_relative_spread", audit.max_relative_spread,
                           cfg.tol_lambda_spread));
  r.checks.push_back(
      check("missing_indices", static_cast<double>(box.size() - spectral.size()), 0.0));
  r.note = "lambda=" + fmt17(audit.lambda) + " (1/(2pi)=" + fmt17(1.0 / kTwoPi) +
           ") indices=" + std::to_string(audit.used);
  return r;
}

CriterionResult reconstruction(const RunConfig& cfg, const SpectralOptions& opt,
                               double lambda_rec) {
  CriterionResult r{4, "reconstruction from spectral coefficients", {}, 0, 0, ""};
  const TestFunction bump = builtin("bump");
  const auto points = interior_points(50, bump.f.box, 0.05, 0.2);
  std::vector<double> errors;
  for (int k : {6, 12}) {
    const SpectralData data = spectral_data(bump.f, k, k, cfg.quadrature(), opt);
    const CosetCoefficients table = coeff_spectral_table(data);
    double worst = 0.0;
    for (const CosetPoint& c : points) {
      worst = std::max(worst, std::abs(reconstruct(table, c, lambda_rec) - bump.f(c.representative())));
    }
    errors.push_back(worst);
  }
  r.checks.push_back(check("max_abs_err_k6_rho6", errors[0], cfg.tol_reconstruction));
  r.checks.push_back(check("err_k12_rho12_over_k6", errors[1] / errors[0], 1.0));
  r.checks.back().pass = errors[1] < errors[0];
  r.note = "err(12,12)=" + fmt17(errors[1]);
  return r;
}

CriterionResult plancherel(const RunConfig& cfg, const SpectralOptions& opt, double lambda_rec) {
  CriterionResult r{5, "Plancherel over the lattice spectrum", {}, 0, 0, ""};
  const QuadratureSpec q = cfg.quadrature();
  for (const char* name : {"bump", "character"}) {
    const TestFunction t = builtin(name);
    const SpectralData data = spectral_data(t.f, cfg.k_max, cfg.rho_max, q, opt);
    const PlancherelParts parts = plancherel_spectral(data);
    const double direct = plancherel_direct(periodization(t.f), q);
    const double rel = std::abs(parts.total() * lambda_rec * lambda_rec - direct) / direct;
    r.checks.push_back(check(std::string("relative_err_") + name, rel, cfg.tol_plancherel));
    if (std::string(name) == "character") {
      r.checks.push_back(
          check("character_shell_fraction", parts.shells / parts.total(), cfg.tol_character_shell));
    }
  }
  r.note = "k_max=" + std::to_string(cfg.k_max) + " rho_max=" + fmt17(cfg.rho_max);
  return r;
}

CriterionResult convolution_series(const RunConfig& cfg, const SpectralOptions& opt,
                                   double lambda_rec) {
  CriterionResult r{6, "convolution series and spectral product law", {}, 0, 0, ""};
  const GroupFunction f1 = builtin("narrow1").f;
  const GroupFunction f2 = builtin("narrow2").f;
  const QuadratureSpec q = with_window_theta(cfg.quadrature());
  const CosetFunction psi = periodization(f1);
  const SpectralData data = convolution_spectral_data(f1, f2, 8, cfg.rho_max, q, opt);
  const std::vector<CosetPoint> points = {
      {0.5, 0.5, 3.0}, {0.4, 0.55, 2.0}, {0.6, 0.35, 4.2}, {0.3, 0.7, 1.6}, {0.52, 0.45, 2.6}};
  double scale = 0.0;
  double worst = 0.0;
  for (const CosetPoint& c : points) {
    const Complex direct = oslash(psi, f2, c, q);
    scale = std::max(scale, std::abs(direct));
    worst = std::max(worst, std::abs(oslash_series(data, c, lambda_rec) - direct));
  }
  r.checks.push_back(check("series_relative_err", worst / scale, cfg.tol_convolution_series));

  const QuadratureSpec qc = with_window_theta(QuadratureSpec::uniform(cfg.grid_convolution));
  const FourierSampler conv(convolution(f1, f2, qc), qc);
  const FourierSampler s1(f1, q);
  const FourierSampler s2(f2, q);
  const int interior = 6;
  double law = 0.0;
  for (double p : {kTwoPi, kTwoPi * std::sqrt(2.0), 3.0 * kTwoPi}) {
    const int inner = spectral_row_band(interior, p, s2.max_radius(), opt);
    const int rows = spectral_row_band(inner, p, s1.max_radius(), opt);
    const FourierMatrix product =
        operator_product(s2.block(p, inner, interior), s1.block(p, rows, inner));
    const FourierMatrix direct = conv.matrix(p, interior);
    law = std::max(law, max_abs_diff(product, direct, interior, interior) / direct.max_abs());
  }
  r.checks.push_back(check("product_law_relative_residual", law, cfg.tol_product_law));
  r.note = "k3_max=8 rho_max=" + fmt17(cfg.rho_max) + " interior band 6";
  return r;
}

CriterionResult zero_frequency(const RunConfig& cfg) {
  CriterionResult r{7, "zero-frequency limit, builtin mode", {}, 0, 0, ""};
  const TestFunction mode = builtin("mode");
  const QuadratureSpec q = cfg.quadrature();
  const int band = 8;
  const FourierMatrix f = fourier_matrix(mode.f, RadialFrequency(1e-4), band, q);
  double worst = 0.0;
  for (int n = -band; n <= band; ++n) {
    const Complex c = char_coeff(mode.f, -n, q);
    for (int m = -band; m <= band; ++m) {
      worst = std::max(worst, std::abs(f(n, m) - (n == m ? c : Complex{})));
    }
  }
  r.checks.push_back(check("max_abs_diff", worst, cfg.tol_zero_frequency));
  return r;
}

CriterionResult lattice_decomposition() {
  CriterionResult r{8, "lattice shells reproduce the nonzero pairs with norm <= 6", {}, 0, 0, ""};
  std::set<LatticePoint> shells;
  for (const LatticeShell& s : enumerate_shells(6.0)) {
    for (const LatticePoint& p : s.points) {
      shells.insert(p);
    }
  }
  std::set<LatticePoint> brute;
  for (int a = -6; a <= 6; ++a) {
    for (int b = -6; b <= 6; ++b) {
      if ((a != 0 || b != 0) && a * a + b * b <= 36) {
        brute.insert({a, b});
      }
    }
  }
  std::size_t mismatch = 0;
  for (const auto& p : shells) {
    mismatch += brute.count(p) == 0 ? 1 : 0;
  }
  for (const auto& p : brute) {
    mismatch += shells.count(p) == 0 ? 1 : 0;
  }
  r.checks.push_back(check("symmetric_difference", static_cast<double>(mismatch), 0.0));
  r.note = "points=" + std::to_string(shells.size());
  return r;
}

CriterionResult invariants(const RunConfig& cfg) {
  CriterionResult r{9, "module invariants", {}, 0, 1200.0, ""};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> t(0.0, kTwoPi);
  auto random_g = [&] { return GroupElement(u(rng), u(rng), t(rng)); };
  auto dist = [](const GroupElement& a, const GroupElement& b) {
    return std::max({std::abs(a.x1() - b.x1()), std::abs(a.x2() - b.x2()),
                     angular_distance(a.theta(), b.theta())});
  };

  double group = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const GroupElement g = random_g();
    const GroupElement h = random_g();
    const GroupElement k = random_g();
    group = std::max({group, dist(compose(compose(g, h), k), compose(g, compose(h, k))),
                      dist(compose(g, inverse(g)), GroupElement::identity()),
                      dist(compose(GroupElement::identity(), g), g)});
  }
  r.checks.push_back(check("group_axioms", group, 1e-12));

  double recurrence = 0.0;
  double normalization = 0.0;
  std::uniform_real_distribution<double> ux(0.1, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double x = ux(rng);
    const int qmax = static_cast<int>(std::ceil(x)) + 40;
    const std::vector<double> j = bessel_j_band(qmax, x);
    for (int q = -30; q <= 30; ++q) {
      const double lhs = j[q - 1 + qmax] + j[q + 1 + qmax] - 2.0 * q / x * j[q + qmax];
      recurrence = std::max(recurrence, std::abs(lhs) / std::max(1.0, std::abs(j[q + qmax])));
    }
    double s = 0.0;
    for (double v : j) {
      s += v * v;
    }
    normalization = std::max(normalization, std::abs(s - 1.0));
  }
  r.checks.push_back(check("bessel_recurrence", recurrence, 1e-10));
  r.checks.push_back(check("bessel_normalization", normalization, 1e-10));

  // A bump straddling the cell corner, so the periodization mixes translates.
  const GroupFunction straddle{[](const GroupElement& g) {
                                 return Complex(poly_bump(g.x1(), -0.3, 0.35, 8) *
                                                poly_bump(g.x2(), -0.25, 0.4, 8) *
                                                poly_bump(g.theta(), 0.5, 5.5, 8));
                               },
                               {{-0.3, 0.35}, {-0.25, 0.4}, {0.5, 5.5}}};
  QuadratureSpec q64 = QuadratureSpec::uniform(64);
  q64.theta_scheme = AxisScheme::gauss_legendre;
  const Complex haar = integrate_haar(straddle, straddle.box, q64);
  const Complex weil = integrate_coset_weil(
      [&](const CosetPoint& c) { return periodize(straddle, c.representative()); }, q64);
  r.checks.push_back(check("weil_identity", std::abs(haar - weil), 1e-8));

  const TestFunction bump = builtin("bump");
  const CosetFunction psi = periodization(bump.f);
  const QuadratureSpec q = cfg.quadrature();
  const double norm = plancherel_direct(psi, q);
  double previous = 1e300;
  bool monotone = true;
  double parseval = 0.0;
  for (int k : {2, 4, 8}) {
    double sum = 0.0;
    for (const auto& [idx, c] : coeff_direct_table(psi, BasisIndexBox::cube(k), q)) {
      sum += std::norm(c);
    }
    parseval = std::abs(norm - sum);
    monotone = monotone && parseval < previous;
    previous = parseval;
  }
  r.checks.push_back(check("parseval_gap_k8", parseval, 1e-6));
  r.checks.push_back({"parseval_monotone", monotone ? 0.0 : 1.0, 0.0, monotone});

  const GroupFunction f2 = builtin("narrow2").f;
  const QuadratureSpec qn = with_window_theta(QuadratureSpec::uniform(24));
  double coset = 0.0;
  const CosetPoint base(0.45, 0.6, 2.5);
  const Complex ref = oslash(psi, f2, base, qn);
  for (int a = -2; a <= 2; ++a) {
    for (int b = -2; b <= 2; ++b) {
      const CosetPoint moved =
          coset_project(compose(GroupElement::translation(a, b), base.representative()));
      coset = std::max(coset, std::abs(oslash(psi, f2, moved, qn) - ref));
    }
  }
  r.checks.push_back(check("oslash_coset_well_defined", coset, 1e-10));
  return r;
}

template <typename F>
CriterionResult timed(F&& body) {
  const auto start = Clock::now();
  CriterionResult r = body();
  r.runtime_s = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

}  // namespace

bool CriterionResult::pass() const {
  for (const Check& c : checks) {
    if (!c.pass) {
      return false;
    }
  }
  return runtime_limit_s <= 0.0 || runtime_s <= runtime_limit_s;
}

bool AcceptanceReport::all_pass() const {
  for (const auto& c : criteria) {
    if (!c.pass()) {
      return false;
    }
  }
  return !criteria.empty();
}

std::vector<CosetPoint> interior_points(std::size_t n, const SupportBox& box, double inset_xy,
                                        double inset_theta) {
  const double alpha[3] = {std::sqrt(2.0) - 1.0, std::sqrt(3.0) - 1.0, std::sqrt(5.0) - 2.0};
  std::vector<CosetPoint> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double s = static_cast<double>(i);
    const double x = box.x.lo + inset_xy + (box.x.length() - 2 * inset_xy) * frac(s * alpha[0]);
    const double y = box.y.lo + inset_xy + (box.y.length() - 2 * inset_xy) * frac(s * alpha[1]);
    const double th =
        box.theta.lo + inset_theta + (box.theta.length() - 2 * inset_theta) * frac(s * alpha[2]);
    out.emplace_back(x, y, th);
  }
  return out;
}

AcceptanceReport run_acceptance(const RunConfig& config,
                                const std::function<void(const CriterionResult&)>& on_result) {
  config.validate();
  SpectralOptions opt;
  opt.band_margin = config.band_margin;
  opt.tail_tolerance = config.tail_tolerance;

  AcceptanceReport report;
  auto record = [&](CriterionResult r) {
    report.criteria.push_back(r);
    if (on_result) {
      on_result(report.criteria.back());
    }
  };
  // A criterion that throws is reported as failed with the message.
  auto guarded = [&](int id, const std::string& title, auto&& body) {
    try {
      record(timed(body));
    } catch (const std::exception& e) {
      CriterionResult r{id, title, {{"exception", 1.0, 0.0, false}}, 0, 0, e.what()};
      record(r);
    }
  };

  double lambda = 1.0 / kTwoPi;
  guarded(1, "matrix-element closed form", [&] { return matrix_elements(config); });
  guarded(2, "group Fourier round trip", [&] { return round_trip(config); });
  guarded(3, "coefficient equivalence",
          [&] { return coefficient_equivalence(config, opt, lambda); });
  report.lambda = lambda;
  const double lambda_rec = 1.0 / lambda;
  guarded(4, "reconstruction", [&] { return reconstruction(config, opt, lambda_rec); });
  guarded(5, "Plancherel", [&] { return plancherel(config, opt, lambda_rec); });
  guarded(6, "convolution series", [&] { return convolution_series(config, opt, lambda_rec); });
  guarded(7, "zero-frequency limit", [&] { return zero_frequency(config); });
  guarded(8, "lattice decomposition", [&] { return lattice_decomposition(); });
  guarded(9, "module invariants", [&] { return invariants(config); });
  return report;
}

std::string summary_line(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.pass() ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << " " << r.title << ":";
  for (const Check& c : r.checks) {
    char buf[160];
    std::snprintf(buf, sizeof buf, " %s=%.3e (tol %.1e)%s", c.name.c_str(), c.measured,
                  c.tolerance, c.pass ? "" : " FAILED");
    out << buf;
  }
  char tail[96];
  std::snprintf(tail, sizeof tail, " [%.1fs", r.runtime_s);
  out << tail;
  if (r.runtime_limit_s > 0.0) {
    std::snprintf(tail, sizeof tail, " / limit %.0fs", r.runtime_limit_s);
    out << tail;
  }
  out << "]";
  if (!r.note.empty()) {
    out << " " << r.note;
  }
  return out.str();
}

std::string report_json(const AcceptanceReport& report) {
  std::ostringstream out;
  out << "{\n  \"all_pass\": " << (report.all_pass() ? "true" : "false")
      << ",\n  \"lambda\": " << fmt17(report.lambda) << ",\n  \"criteria\": [";
  for (std::size_t i = 0; i < report.criteria.size(); ++i) {
    const CriterionResult& r = report.criteria[i];
    out << (i ? "," : "") << "\n    {\"id\": " << r.id << ", \"title\": " << json_string(r.title)
        << ", \"pass\": " << (r.pass() ? "true" : "false")
        << ", \"runtime_s\": " << fmt17(r.runtime_s)
        << ", \"runtime_limit_s\": " << fmt17(r.runtime_limit_s)
        << ", \"note\": " << json_string(r.note) << ", \"checks\": [";
    for (std::size_t j = 0; j < r.checks.size(); ++j) {
      const Check& c = r.checks[j];
      out << (j ? ", " : "") << "{\"name\": " << json_string(c.name)
          << ", \"measured\": " << fmt17(c.measured) << ", \"tolerance\": " << fmt17(c.tolerance)
          << ", \"pass\": " << (c.pass ? "true" : "false") << "}";
    }
    out << "]}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

}  // namespace se2h
