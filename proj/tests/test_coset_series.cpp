#include <gtest/gtest.h>

#include <fstream>
#include <numbers>

#include "helpers.hpp"
#include "json.hpp"
#include "se2h/acceptance.hpp"
#include "se2h/coset_series.hpp"
#include "se2h/test_functions.hpp"

using namespace se2h;

namespace {

constexpr double kPi = std::numbers::pi;

// Shared by the tests below: the builtin bump at grid 64, spectral data up to
// k3 = 6 and rho = 6.
struct BumpFixture {
  TestFunction bump = builtin("bump");
  QuadratureSpec q = QuadratureSpec::uniform(64);
  SpectralData data = spectral_data(bump.f, 6, 6.0, q);
  CosetCoefficients spectral = coeff_spectral_table(data);
};

const BumpFixture& fixture() {
  static const BumpFixture f;
  return f;
}

}  // namespace

TEST(Basis, Values) {
  const CosetPoint c(0.3, 0.8, 2.0);
  EXPECT_EQ(basis_eval({0, 0, 0}, c), Complex(1.0));
  const Complex v = basis_eval({1, 2, -1}, CosetPoint(0.25, 0.5, kPi));
  EXPECT_NEAR(v.real(), 0.0, 1e-15);
  EXPECT_NEAR(v.imag(), -1.0, 1e-15);

  std::mt19937_64 rng(31);
  for (int i = 0; i < 20; ++i) {
    const GroupElement g = se2h::testing::random_element(rng);
    for (int a = -2; a <= 2; ++a) {
      const CosetPoint moved = coset_project(compose(GroupElement::translation(a, 1 - a), g));
      EXPECT_NEAR(std::abs(basis_eval({2, -1, 3}, moved) - basis_eval({2, -1, 3}, coset_project(g))),
                  0.0, 1e-12);
    }
  }
}

TEST(Basis, Orthonormality) {
  const QuadratureSpec q = QuadratureSpec::uniform(16);
  const std::vector<LatticeVector> ks = {{0, 0, 0}, {1, 0, 0}, {0, -2, 1}, {1, 1, -3}, {-2, 3, 2}};
  for (const auto& n : ks) {
    for (const auto& m : ks) {
      const Complex c = coeff_direct(basis_function(n), m, q);
      EXPECT_NEAR(std::abs(c - (n == m ? 1.0 : 0.0)), 0.0, 1e-12);
    }
    EXPECT_NEAR(plancherel_direct(basis_function(n), q), 1.0, 1e-12);
  }
}

TEST(Basis, IndexBox) {
  const BasisIndexBox box = BasisIndexBox::cube(2);
  EXPECT_EQ(box.size(), 125u);
  const auto idx = box.indices();
  ASSERT_EQ(idx.size(), 125u);
  EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
  EXPECT_EQ(idx.front(), (LatticeVector{-2, -2, -2}));
  EXPECT_THROW((BasisIndexBox{-1, 0, 0}.validate()), InvalidArgument);
}

TEST(CoeffDirect, ZeroAndRefinement) {
  const CosetFunction zero{[](const CosetPoint&) { return Complex{}; }};
  EXPECT_EQ(coeff_direct(zero, {1, 2, 3}, QuadratureSpec::uniform(8)), Complex{});
  EXPECT_EQ(plancherel_direct(zero, QuadratureSpec::uniform(8)), 0.0);

  const CosetFunction psi = periodization(builtin("bump").f);
  const BasisIndexBox box = BasisIndexBox::cube(2);
  const auto coarse = coeff_direct_table(psi, box, QuadratureSpec::uniform(64));
  const auto fine = coeff_direct_table(psi, box, QuadratureSpec::uniform(128));
  for (const auto& [k, v] : coarse) {
    EXPECT_LE(std::abs(v - fine.at(k)), 1e-9);
  }
}

TEST(CoeffDirect, ConjugateSymmetry) {
  const CosetFunction psi = periodization(builtin("bump").f);
  const auto table = coeff_direct_table(psi, BasisIndexBox::cube(2), QuadratureSpec::uniform(48));
  for (const auto& [k, v] : table) {
    EXPECT_LE(std::abs(table.at({-k.k1, -k.k2, -k.k3}) - std::conj(v)), 1e-10);
  }
}

TEST(CoeffDirect, ParsevalGapShrinks) {
  const CosetFunction psi = periodization(builtin("bump").f);
  const QuadratureSpec q = QuadratureSpec::uniform(64);
  const double norm = plancherel_direct(psi, q);
  double previous = 1e300;
  for (int k : {2, 4, 8}) {
    double sum = 0.0;
    for (const auto& [idx, c] : coeff_direct_table(psi, BasisIndexBox::cube(k), q)) {
      sum += std::norm(c);
    }
    const double gap = std::abs(norm - sum);
    EXPECT_LT(gap, previous);
    previous = gap;
  }
  EXPECT_LE(previous, 1e-6);
}

TEST(SpectralLine, Metadata) {
  const SpectralLine line = spectral_line(3, 4, 2, -1);
  EXPECT_NEAR(line.p0, kTwoPi * 5.0, 1e-12);
  EXPECT_EQ(line.k3, -2);
  EXPECT_NEAR(std::abs(line.amplitude), 1.0 / line.p0, 1e-15);
  EXPECT_NEAR(std::arg(line.amplitude), std::remainder(3 * 0.927295218001612, kTwoPi), 1e-12);
}

TEST(CoeffSpectral, ZeroFunction) {
  const GroupFunction zero{[](const GroupElement&) { return Complex{}; },
                           {{0.2, 0.8}, {0.2, 0.8}, {0.0, kTwoPi}}};
  const QuadratureSpec q = QuadratureSpec::uniform(8);
  EXPECT_EQ(coeff_spectral(zero, {1, 0, 2}, q), Complex{});
  EXPECT_EQ(coeff_spectral(zero, {0, 0, 2}, q), Complex{});
}

TEST(CoeffSpectral, CharacterIndexUsesCharCoeff) {
  const auto& fx = fixture();
  for (int k3 = -3; k3 <= 3; ++k3) {
    EXPECT_NEAR(std::abs(coeff_spectral(fx.bump.f, {0, 0, k3}, fx.q) -
                         char_coeff(fx.bump.f, k3, fx.q)),
                0.0, 1e-15);
  }
}

TEST(CoeffSpectral, SingleEntryMatchesTable) {
  const auto& fx = fixture();
  for (const LatticeVector& k : {LatticeVector{1, 2, -1}, LatticeVector{-3, 0, 4}}) {
    EXPECT_NEAR(std::abs(coeff_spectral(fx.bump.f, k, fx.q) - fx.spectral.at(k)), 0.0, 1e-13);
  }
}

TEST(CoeffSpectral, ConjugateSymmetry) {
  const auto& fx = fixture();
  for (const auto& [k, v] : fx.spectral) {
    if (std::abs(k.k1) <= 3 && std::abs(k.k2) <= 3) {
      EXPECT_LE(std::abs(fx.spectral.at({-k.k1, -k.k2, -k.k3}) - std::conj(v)), 1e-10);
    }
  }
}

TEST(Calibration, AuditMatchesGoldenValue) {
  std::ifstream in(SE2H_GOLDEN_DIR "/calibration.json");
  ASSERT_TRUE(in.good());
  const nlohmann::json golden = nlohmann::json::parse(in);
  const double lambda = golden.at("lambda").get<double>();
  const double lambda_rec = golden.at("lambda_rec").get<double>();
  EXPECT_EQ(lambda, kCalibratedLambda);
  EXPECT_NEAR(lambda * lambda_rec, 1.0, 1e-15);

  const auto& fx = fixture();
  const BasisIndexBox box = BasisIndexBox::cube(3);
  CosetCoefficients spectral;
  for (const auto& [k, v] : fx.spectral) {
    if (box.contains(k)) spectral.set(k, v);
  }
  const auto direct = coeff_direct_table(periodization(fx.bump.f), box, fx.q);
  const NormalizationAudit audit = audit_normalization(spectral, direct);
  EXPECT_NEAR(audit.lambda, lambda, 1e-10 * lambda);
  EXPECT_LE(audit.relative_std, 1e-6);
  EXPECT_LE(audit.max_imag, 1e-6);
  EXPECT_GT(audit.used, 100u);
}

TEST(Reconstruct, TrivialCases) {
  const CosetPoint c(0.4, 0.6, 1.0);
  EXPECT_EQ(reconstruct(CosetCoefficients{}, c, 2.0), Complex{});
  const LatticeVector k{1, -1, 2};
  const auto single = coeff_direct_table(basis_function(k), BasisIndexBox::cube(2),
                                         QuadratureSpec::uniform(16));
  EXPECT_NEAR(std::abs(reconstruct(single, c, 1.0) - basis_eval(k, c)), 0.0, 1e-12);
}

TEST(Reconstruct, BumpAtInteriorPoints) {
  const auto& fx = fixture();
  for (const CosetPoint& c : interior_points(50, fx.bump.f.box, 0.05, 0.2)) {
    const Complex exact = fx.bump.f(c.representative());
    EXPECT_LE(std::abs(reconstruct(fx.spectral, c, kCalibratedLambdaRec) - exact), 1e-3);
    // The three orderings of the same truncated sum.
    const Complex terms = reconstruct_terms(fx.data, c);
    const Complex shells = reconstruct_shells(fx.data, c);
    EXPECT_LE(std::abs(terms - shells), 1e-12);
    EXPECT_LE(std::abs(kCalibratedLambdaRec * shells - reconstruct(fx.spectral, c, kCalibratedLambdaRec)),
              1e-12);
  }
}

TEST(Plancherel, BumpAndCharacterOnlyFunction) {
  const auto& fx = fixture();
  const PlancherelParts parts = plancherel_spectral(fx.data);
  const double direct = plancherel_direct(periodization(fx.bump.f), fx.q);
  EXPECT_LE(std::abs(parts.total() * kCalibratedLambdaRec * kCalibratedLambdaRec - direct) / direct,
            1e-2);
  EXPECT_NEAR(plancherel_direct(periodization(fx.bump.f), fx.q, Convention::weil),
              direct / kTwoPi, 1e-15);

  const TestFunction ch = builtin("character");
  const SpectralData d = spectral_data(ch.f, 4, 6.0, fx.q);
  const PlancherelParts p = plancherel_spectral(d);
  double expected = 0.0;
  for (const auto& [n, c] : ch.theta_coefficients) {
    expected += std::norm(c / kTwoPi);
  }
  EXPECT_LE(p.shells, 1e-6 * p.total());
  EXPECT_NEAR(p.character, expected, 1e-5 * expected);
}

TEST(Plancherel, ZeroFunction) {
  const GroupFunction zero{[](const GroupElement&) { return Complex{}; },
                           {{0.2, 0.8}, {0.2, 0.8}, {0.0, kTwoPi}}};
  const SpectralData d = spectral_data(zero, 2, 2.0, QuadratureSpec::uniform(8));
  EXPECT_EQ(plancherel_spectral(d).total(), 0.0);
}
