#include <gtest/gtest.h>

#include <numbers>
#include <set>

#include "se2h/lattice_spectrum.hpp"

using namespace se2h;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(RhoPhi, AxisAndGeneralPoints) {
  EXPECT_NEAR(rho_phi(0, 1).rho, 1.0, 0.0);
  EXPECT_NEAR(rho_phi(0, 1).phi, kPi / 2, 1e-15);
  EXPECT_NEAR(rho_phi(-1, 0).phi, kPi, 1e-15);
  EXPECT_NEAR(rho_phi(3, 4).rho, 5.0, 1e-15);
  EXPECT_NEAR(rho_phi(3, 4).phi, 0.927295218001612, 1e-12);
  EXPECT_NEAR(rho_phi(0, -1).phi, 3 * kPi / 2, 1e-15);
  EXPECT_THROW(rho_phi(0, 0), InvalidArgument);
}

TEST(Shells, RhoMaxTwo) {
  const auto shells = enumerate_shells(2.0);
  ASSERT_EQ(shells.size(), 3u);
  const long norms[] = {1, 2, 4};
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(shells[i].rho_sq, norms[i]);
    EXPECT_NEAR(shells[i].rho, std::sqrt(static_cast<double>(norms[i])), 1e-15);
    EXPECT_EQ(shells[i].angles.size(), 4u);
    EXPECT_TRUE(std::is_sorted(shells[i].angles.begin(), shells[i].angles.end()));
  }
}

TEST(Shells, NoShellForNonSumsOfSquares) {
  for (const auto& s : enumerate_shells(6.0)) {
    EXPECT_NE(s.rho_sq, 3);
    EXPECT_NE(s.rho_sq, 6);
    EXPECT_NE(s.rho_sq, 7);
    EXPECT_NE(s.rho_sq, 11);
  }
}

TEST(Shells, UnionMatchesBruteForce) {
  std::set<LatticePoint> got;
  for (const auto& s : enumerate_shells(6.0)) {
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const auto& p = s.points[i];
      EXPECT_EQ(static_cast<long>(p.k1) * p.k1 + static_cast<long>(p.k2) * p.k2, s.rho_sq);
      EXPECT_NEAR(rho_phi(p.k1, p.k2).phi, s.angles[i], 0.0);
      EXPECT_TRUE(got.insert(p).second);
    }
  }
  std::set<LatticePoint> brute;
  for (int a = -6; a <= 6; ++a) {
    for (int b = -6; b <= 6; ++b) {
      if ((a || b) && a * a + b * b <= 36) {
        brute.insert({a, b});
      }
    }
  }
  EXPECT_EQ(brute.size(), 112u);
  EXPECT_EQ(got, brute);
}

TEST(Shells, SquareRootCutoffIsInclusive) {
  const auto shells = enumerate_shells(std::sqrt(18.0));
  EXPECT_EQ(shells.back().rho_sq, 18);
  EXPECT_THROW(enumerate_shells(0.5), InvalidArgument);
}

TEST(ShellKernel, Values) {
  const auto shells = enumerate_shells(2.0);
  EXPECT_NEAR(std::abs(shell_kernel(shells[0], 0, 0.0, 0.0) - 4.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(shell_kernel(shells[0], 1, 0.0, 0.0)), 0.0, 1e-15);

  const double rho = std::sqrt(2.0);
  const double a = 0.4;
  const double phi = 1.1;
  for (int q = -3; q <= 3; ++q) {
    Complex direct{};
    for (double t : {kPi / 4, 3 * kPi / 4, 5 * kPi / 4, 7 * kPi / 4}) {
      direct += std::polar(1.0, kTwoPi * a * rho * std::cos(phi - t)) * std::polar(1.0, q * t);
    }
    EXPECT_NEAR(std::abs(shell_kernel(shells[1], q, a, phi) - direct), 0.0, 1e-13);
  }
}
