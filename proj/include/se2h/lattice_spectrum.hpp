#pragma once

// Shells of the integer lattice: radii rho with rho^2 = k1^2 + k2^2 and the
// polar angles of the lattice points on each shell.

#include <compare>
#include <vector>

#include "se2h/se2_core.hpp"

namespace se2h {

struct LatticeVector {
  int k1 = 0;
  int k2 = 0;
  int k3 = 0;

  auto operator<=>(const LatticeVector&) const = default;
};

struct LatticePoint {
  int k1 = 0;
  int k2 = 0;

  auto operator<=>(const LatticePoint&) const = default;
};

struct RhoPhi {
  double rho = 0.0;
  double phi = 0.0;
};

/// rho = sqrt(k1^2 + k2^2), phi in [0, 2pi). Throws InvalidArgument at (0, 0).
RhoPhi rho_phi(int k1, int k2);

struct LatticeShell {
  long rho_sq = 0;
  double rho = 0.0;
  /// Ascending, in [0, 2pi); points[i] sits at angles[i].
  std::vector<double> angles;
  std::vector<LatticePoint> points;
};

/// All shells with 0 < rho <= rho_max (relative slack 1e-12), ascending in rho. Throws
/// InvalidArgument unless rho_max >= 1.
std::vector<LatticeShell> enumerate_shells(double rho_max);

/// K_rho^q(a, phi) = sum over theta in the shell of
/// exp(2 pi i a rho cos(phi - theta)) exp(i q theta).
Complex shell_kernel(const LatticeShell& shell, int q, double a, double phi);

}  // namespace se2h
