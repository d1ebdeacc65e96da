#include <gtest/gtest.h>

#include "helpers.hpp"
#include "se2h/irreps.hpp"
#include "se2h/module_action.hpp"
#include "se2h/se2_fourier.hpp"
#include "se2h/test_functions.hpp"

using namespace se2h;
using se2h::testing::box_bump;
using se2h::testing::phased_bump;

namespace {

QuadratureSpec gl(int n) {
  QuadratureSpec q = QuadratureSpec::uniform(n);
  q.theta_scheme = AxisScheme::gauss_legendre;
  return q;
}

// Entry-by-entry Haar integral of f conj(u_mn); no shared kernels with the sampler.
Complex entry_oracle(const GroupFunction& f, double p, int n, int m, const QuadratureSpec& q) {
  return integrate_haar(
      [&](const GroupElement& g) {
        return f(g) * std::conj(matrix_element(m, n, g, RadialFrequency(p)));
      },
      f.box, q);
}

}  // namespace

TEST(FourierMatrix, ZeroFunction) {
  const GroupFunction zero{[](const GroupElement&) { return Complex{}; }, fundamental_domain()};
  EXPECT_EQ(fourier_matrix(zero, RadialFrequency(3.0), 4, QuadratureSpec::uniform(8)).max_abs(),
            0.0);
  EXPECT_EQ(char_coeff(zero, 2, QuadratureSpec::uniform(8)), Complex{});
}

TEST(FourierMatrix, SamplerMatchesEntryOracle) {
  const GroupFunction f = phased_bump({{-0.3, 0.6}, {0.1, 0.9}, {0.5, 4.0}}, 4);
  const QuadratureSpec q = gl(20);
  const FourierSampler s(f, q);
  for (double p : {0.7, 3.0, 9.5}) {
    const FourierMatrix b = s.block(p, 5, 3);
    for (int n = -5; n <= 5; ++n) {
      for (int m = -3; m <= 3; ++m) {
        EXPECT_LE(std::abs(b(n, m) - entry_oracle(f, p, n, m, q)), 1e-13);
      }
    }
  }
}

TEST(FourierMatrix, ModeSelectsOneColumn) {
  const TestFunction mode = builtin("mode");
  const FourierMatrix f =
      fourier_matrix(mode.f, RadialFrequency(4.0), 6, QuadratureSpec::uniform(32));
  double off = 0.0;
  double on = 0.0;
  for (int n = -6; n <= 6; ++n) {
    for (int m = -6; m <= 6; ++m) {
      double& slot = m == -kModeFrequency ? on : off;
      slot = std::max(slot, std::abs(f(n, m)));
    }
  }
  EXPECT_LE(off, 1e-14);
  EXPECT_GT(on, 1e-3);
}

TEST(CharCoeff, ModeClosedForm) {
  const TestFunction mode = builtin("mode");
  const Rule1D r = gauss_legendre(200, 0.2, 0.8);
  double w = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    w += r.weights[i] * taper_bump(r.nodes[i], 0.2, 0.8);
  }
  const QuadratureSpec q = QuadratureSpec::uniform(64);
  for (int n = -4; n <= 4; ++n) {
    const Complex c = char_coeff(mode.f, n, q);
    const double expected = n == kModeFrequency ? w * w / kTwoPi : 0.0;
    EXPECT_NEAR(std::abs(c - expected), 0.0, 1e-12) << n;
  }
}

TEST(CharCoeff, ConjugateSymmetryForRealFunctions) {
  const GroupFunction f = box_bump({{0.1, 0.9}, {-0.2, 0.3}, {0.5, 3.5}}, 4);
  const QuadratureSpec q = gl(24);
  for (int n = 1; n <= 5; ++n) {
    EXPECT_LE(std::abs(char_coeff(f, -n, q) - std::conj(char_coeff(f, n, q))), 1e-15);
  }
}

TEST(FourierMatrix, ZeroFrequencyLimit) {
  const TestFunction mode = builtin("mode");
  const QuadratureSpec q = QuadratureSpec::uniform(48);
  const FourierMatrix f = fourier_matrix(mode.f, RadialFrequency(1e-4), 6, q);
  for (int n = -6; n <= 6; ++n) {
    for (int m = -6; m <= 6; ++m) {
      const Complex expected = n == m ? char_coeff(mode.f, -n, q) : Complex{};
      EXPECT_LE(std::abs(f(n, m) - expected), 1e-3);
    }
  }
}

TEST(FourierMatrix, AdjointLaw) {
  const GroupFunction f = phased_bump({{-0.4, 0.5}, {0.0, 0.7}, {0.0, kTwoPi}}, 8);
  const InvolutedFunction star = involution(f);
  const QuadratureSpec q = QuadratureSpec::uniform(64);
  for (double p : {1.0, 5.0}) {
    const FourierMatrix a = fourier_matrix(star.function, RadialFrequency(p), 5, q);
    const FourierMatrix b = fourier_matrix(f, RadialFrequency(p), 5, q).adjoint();
    EXPECT_LE(max_abs_diff(a, b, 5, 5), 1e-9);
  }
}

TEST(FourierMatrix, OperatorProductAlgebra) {
  FourierMatrix a(1.0, 2, 3);
  FourierMatrix b(1.0, 4, 2);
  for (int n = -2; n <= 2; ++n) {
    for (int m = -3; m <= 3; ++m) {
      a(n, m) = Complex(n + 0.5 * m, n * m);
    }
  }
  for (int n = -4; n <= 4; ++n) {
    for (int m = -2; m <= 2; ++m) {
      b(n, m) = Complex(1.0 - n, m);
    }
  }
  const FourierMatrix c = operator_product(a, b);
  EXPECT_EQ(c.row_band(), 4);
  EXPECT_EQ(c.col_band(), 3);
  for (int n = -4; n <= 4; ++n) {
    for (int m = -3; m <= 3; ++m) {
      Complex s{};
      for (int k = -2; k <= 2; ++k) {
        s += b(n, k) * a(k, m);
      }
      EXPECT_EQ(c(n, m), s);
    }
  }
  EXPECT_THROW(operator_product(b, b), InvalidArgument);
}

TEST(InverseTransform, ZeroSamples) {
  const GroupFunction zero{[](const GroupElement&) { return Complex{}; },
                           {{0.2, 0.8}, {0.2, 0.8}, {0.0, kTwoPi}}};
  const RadialSamples s = sample_radial(zero, 10.0, 20, 4, QuadratureSpec::uniform(8));
  EXPECT_EQ(inverse_transform(s, GroupElement(0.5, 0.5, 1.0)), Complex{});
}

TEST(InverseTransform, PlancherelAndRoundTrip) {
  // Smooth enough that p_max = 30 already captures the spectrum.
  const GroupFunction f = box_bump({{0.1, 0.9}, {0.1, 0.9}, {0.0, kTwoPi}}, 8);
  const QuadratureSpec q = QuadratureSpec::uniform(48);
  const RadialSamples s = sample_radial(f, 30.0, 120, 20, q);
  const double norm =
      integrate_haar([&](const GroupElement& g) { return Complex(std::norm(f(g))); }, f.box, q)
          .real();
  EXPECT_LE(std::abs(plancherel_group(s) - norm) / norm, 1e-3);
  for (const GroupElement& g : {GroupElement(0.5, 0.5, 1.0), GroupElement(0.3, 0.6, 4.0)}) {
    EXPECT_LE(std::abs(inverse_transform(s, g) - f(g)), 1e-3);
  }
}

TEST(InverseTransform, TailCheckRaises) {
  const GroupFunction f = builtin("bump").f;
  RadialSamples s = sample_radial(f, 4.0, 20, 6, QuadratureSpec::uniform(24));
  EXPECT_THROW(inverse_transform(s, GroupElement(0.5, 0.5, 3.0)), ConvergenceError);
}

TEST(Convolution, ZeroSecondFactor) {
  const GroupFunction f1 = builtin("bump").f;
  const GroupFunction zero{[](const GroupElement&) { return Complex{}; },
                           {{-0.1, 0.1}, {-0.1, 0.1}, {0.0, 1.0}}};
  EXPECT_EQ(convolve_direct(f1, zero, GroupElement(0.5, 0.5, 3.0), QuadratureSpec::uniform(8)),
            Complex{});
}

TEST(Convolution, ApproximateIdentity) {
  const GroupFunction f1 = builtin("bump").f;
  const GroupElement h(0.45, 0.55, 2.8);
  const QuadratureSpec q = gl(24);
  double previous = 1e300;
  for (double w : {0.1, 0.05, 0.025}) {
    const SupportBox box{{-w, w}, {-w, w}, {0.0, 2 * w}};
    const GroupFunction raw = box_bump(box, 4);
    const double mass = integrate_haar(raw, box, q).real();
    const GroupFunction unit{[raw, mass](const GroupElement& g) { return raw(g) / mass; }, box};
    // Centred at the identity: the theta window wraps around 0.
    const GroupFunction centred{
        [unit, w](const GroupElement& g) {
          const double t = g.theta() > kTwoPi - w ? g.theta() - kTwoPi + w : g.theta() + w;
          return t < 2 * w ? unit(GroupElement(g.x1(), g.x2(), t)) : Complex{};
        },
        {box.x, box.y, {0.0, kTwoPi}}};
    QuadratureSpec qq = q;
    qq.theta_scheme = AxisScheme::trapezoid;
    qq.n_theta = 4000;
    const double err = std::abs(convolve_direct(f1, centred, h, qq) - f1(h));
    EXPECT_LT(err, previous);
    previous = err;
  }
  EXPECT_LT(previous, 1e-2);
}

TEST(Convolution, SpectralProductLaw) {
  const GroupFunction f1 = builtin("narrow1").f;
  const GroupFunction f2 = builtin("narrow2").f;
  const QuadratureSpec q = gl(24);
  const FourierSampler conv(convolution(f1, f2, q), q);
  const FourierSampler s1(f1, q);
  const FourierSampler s2(f2, q);
  const SpectralOptions opt;
  const double p = kTwoPi;
  const int inner = spectral_row_band(6, p, s2.max_radius(), opt);
  const int rows = spectral_row_band(inner, p, s1.max_radius(), opt);
  const FourierMatrix product = operator_product(s2.block(p, inner, 6), s1.block(p, rows, inner));
  const FourierMatrix direct = conv.matrix(p, 6);
  EXPECT_LE(max_abs_diff(product, direct, 6, 6) / direct.max_abs(), 1e-6);
}
