#pragma once

// Run configuration: a line-oriented "key = value" format with [sections].

#include <string>

#include "se2h/se2_core.hpp"

namespace se2h {

struct RunConfig {
  // [grid]
  int grid_xy = 64;
  int grid_theta = 64;
  int grid_convolution = 24;
  // [spectral]
  int band = 24;
  int k_max = 4;
  double rho_max = 6.0;
  double p_max = 40.0;
  int radial_nodes = 200;
  int band_margin = 20;
  double tail_tolerance = 1e-10;
  double inverse_tail_tolerance = 1e-3;
  // [tolerances]
  double tol_matrix_element = 1e-8;
  double tol_round_trip = 1e-3;
  double tol_lambda_spread = 1e-4;
  double tol_reconstruction = 1e-2;
  double tol_plancherel = 1e-2;
  double tol_character_shell = 1e-6;
  double tol_convolution_series = 1e-2;
  double tol_product_law = 1e-6;
  double tol_zero_frequency = 1e-3;
  // [output]
  std::string out_dir = "out";
  std::string report = "acceptance_report.json";

  bool operator==(const RunConfig&) const = default;

  /// Sizes must be positive and tolerances non-negative.
  void validate() const;
  QuadratureSpec quadrature() const;
};

/// Raised for malformed configuration text; the message carries the line.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Every key must be present exactly once.
RunConfig parse_config(const std::string& text, const std::string& source = "config");
RunConfig load_config(const std::string& path);
std::string print_config(const RunConfig& config);

}  // namespace se2h
