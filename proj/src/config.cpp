#include "se2h/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>
#include <vector>

namespace se2h {

namespace {

using Field = std::variant<int RunConfig::*, double RunConfig::*, std::string RunConfig::*>;

struct Key {
  const char* section;
  const char* name;
  Field field;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> k = {
      {"grid", "xy", &RunConfig::grid_xy},
      {"grid", "theta", &RunConfig::grid_theta},
      {"grid", "convolution", &RunConfig::grid_convolution},
      {"spectral", "band", &RunConfig::band},
      {"spectral", "k_max", &RunConfig::k_max},
      {"spectral", "rho_max", &RunConfig::rho_max},
      {"spectral", "p_max", &RunConfig::p_max},
      {"spectral", "radial_nodes", &RunConfig::radial_nodes},
      {"spectral", "band_margin", &RunConfig::band_margin},
      {"spectral", "tail_tolerance", &RunConfig::tail_tolerance},
      {"spectral", "inverse_tail_tolerance", &RunConfig::inverse_tail_tolerance},
      {"tolerances", "matrix_element", &RunConfig::tol_matrix_element},
      {"tolerances", "round_trip", &RunConfig::tol_round_trip},
      {"tolerances", "lambda_spread", &RunConfig::tol_lambda_spread},
      {"tolerances", "reconstruction", &RunConfig::tol_reconstruction},
      {"tolerances", "plancherel", &RunConfig::tol_plancherel},
      {"tolerances", "character_shell", &RunConfig::tol_character_shell},
      {"tolerances", "convolution_series", &RunConfig::tol_convolution_series},
      {"tolerances", "product_law", &RunConfig::tol_product_law},
      {"tolerances", "zero_frequency", &RunConfig::tol_zero_frequency},
      {"output", "dir", &RunConfig::out_dir},
      {"output", "report", &RunConfig::report},
  };
  return k;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
  throw ConfigError(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

void RunConfig::validate() const {
  for (int v : {grid_xy, grid_theta, grid_convolution, radial_nodes}) {
    if (v < 2) {
      throw InvalidArgument("config: grid sizes and radial_nodes must be >= 2");
    }
  }
  if (band < 0 || k_max < 0 || band_margin < 0) {
    throw InvalidArgument("config: band, k_max and band_margin must be >= 0");
  }
  if (!(rho_max >= 1.0) || !(p_max > 0.0)) {
    throw InvalidArgument("config: rho_max must be >= 1 and p_max > 0");
  }
  for (double t : {tail_tolerance, inverse_tail_tolerance, tol_matrix_element, tol_round_trip,
                   tol_lambda_spread, tol_reconstruction, tol_plancherel, tol_character_shell,
                   tol_convolution_series, tol_product_law, tol_zero_frequency}) {
    if (!(t >= 0.0)) {
      throw InvalidArgument("config: tolerances must be >= 0");
    }
  }
  if (out_dir.empty() || report.empty()) {
    throw InvalidArgument("config: output paths must be non-empty");
  }
}

QuadratureSpec RunConfig::quadrature() const {
  QuadratureSpec q;
  q.n_x = grid_xy;
  q.n_y = grid_xy;
  q.n_theta = grid_theta;
  q.n_phi = grid_theta;
  return q;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  std::map<std::string, const Key*> lookup;
  for (const Key& k : keys()) {
    lookup[std::string(k.section) + "." + k.name] = &k;
  }
  RunConfig cfg;
  std::set<std::string> seen;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) {
      continue;
    }
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3) {
        fail(source, line, "malformed section header '" + s + "'");
      }
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      fail(source, line, "expected 'key = value'");
    }
    const std::string name = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    const std::string full = section + "." + name;
    const auto it = lookup.find(full);
    if (section.empty() || it == lookup.end()) {
      fail(source, line, "unknown key '" + full + "'");
    }
    if (!seen.insert(full).second) {
      fail(source, line, "duplicate key '" + full + "'");
    }
    if (value.empty()) {
      fail(source, line, "empty value for '" + full + "'");
    }
    std::visit(
        [&](auto member) {
          using T = std::remove_cvref_t<decltype(cfg.*member)>;
          if constexpr (std::is_same_v<T, std::string>) {
            cfg.*member = value;
          } else {
            std::size_t used = 0;
            try {
              if constexpr (std::is_same_v<T, int>) {
                cfg.*member = std::stoi(value, &used);
              } else {
                cfg.*member = std::stod(value, &used);
              }
            } catch (const std::exception&) {
              used = 0;
            }
            if (used != value.size()) {
              fail(source, line, "invalid number '" + value + "' for '" + full + "'");
            }
          }
        },
        it->second->field);
  }
  for (const Key& k : keys()) {
    const std::string full = std::string(k.section) + "." + k.name;
    if (seen.count(full) == 0) {
      throw ConfigError(source + ": missing key '" + full + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

std::string print_config(const RunConfig& config) {
  std::ostringstream out;
  std::string section;
  for (const Key& k : keys()) {
    if (section != k.section) {
      if (!section.empty()) {
        out << "\n";
      }
      section = k.section;
      out << "[" << section << "]\n";
    }
    out << k.name << " = ";
    std::visit(
        [&](auto member) {
          using T = std::remove_cvref_t<decltype(config.*member)>;
          if constexpr (std::is_same_v<T, double>) {
            out << format_double(config.*member);
          } else {
            out << config.*member;
          }
        },
        k.field);
    out << "\n";
  }
  return out.str();
}

}  // namespace se2h
