#include "se2h/lattice_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace se2h {

RhoPhi rho_phi(int k1, int k2) {
  if (k1 == 0 && k2 == 0) {
    throw InvalidArgument("rho_phi: angle undefined at (0, 0)");
  }
  const double x = k1;
  const double y = k2;
  return {std::hypot(x, y), wrap_angle(std::atan2(y, x))};
}

std::vector<LatticeShell> enumerate_shells(double rho_max) {
  if (!(rho_max >= 1.0) || !std::isfinite(rho_max)) {
    throw InvalidArgument("enumerate_shells: rho_max must be >= 1");
  }
  // Slack so that rho_max = sqrt(n) keeps the shell of norm n.
  const double limit = rho_max * rho_max * (1.0 + 1e-12);
  const int r = static_cast<int>(std::floor(std::sqrt(limit)));
  std::map<long, std::vector<std::pair<double, LatticePoint>>> by_norm;
  for (int k1 = -r; k1 <= r; ++k1) {
    for (int k2 = -r; k2 <= r; ++k2) {
      const long n = static_cast<long>(k1) * k1 + static_cast<long>(k2) * k2;
      if (n == 0 || static_cast<double>(n) > limit) {
        continue;
      }
      by_norm[n].push_back({rho_phi(k1, k2).phi, {k1, k2}});
    }
  }
  std::vector<LatticeShell> shells;
  shells.reserve(by_norm.size());
  for (auto& [n, pts] : by_norm) {
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    LatticeShell s;
    s.rho_sq = n;
    s.rho = std::sqrt(static_cast<double>(n));
    for (const auto& [angle, pt] : pts) {
      s.angles.push_back(angle);
      s.points.push_back(pt);
    }
    shells.push_back(std::move(s));
  }
  return shells;
}

Complex shell_kernel(const LatticeShell& shell, int q, double a, double phi) {
  Complex total{};
  for (double theta : shell.angles) {
    total += std::polar(1.0, kTwoPi * a * shell.rho * std::cos(phi - theta) + q * theta);
  }
  return total;
}

}  // namespace se2h
