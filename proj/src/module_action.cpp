#include "se2h/module_action.hpp"

#include <cmath>

#include "se2h/parallel.hpp"

namespace se2h {

namespace {

// Sum of weight * h(|psi|) over the support grid of psi.
double coset_sum(const CosetFunction& psi, const QuadratureSpec& q, bool squared) {
  const HaarGrid grid(psi.support, q);
  const std::size_t ny = grid.y.nodes.size();
  const std::size_t nt = grid.theta.nodes.size();
  std::vector<double> rows(grid.x.nodes.size() * ny, 0.0);
  parallel_for(rows.size(), [&](std::size_t ij) {
    const std::size_t i = ij / ny;
    const std::size_t j = ij % ny;
    double acc = 0.0;
    for (std::size_t t = 0; t < nt; ++t) {
      const double theta = grid.theta.nodes[t];
      if (!psi.support.theta.contains(theta)) {
        continue;
      }
      const double v = std::abs(psi(CosetPoint(grid.x.nodes[i], grid.y.nodes[j], theta)));
      acc += grid.weight(i, j, t) * (squared ? v * v : v);
    }
    rows[ij] = acc;
  });
  double total = 0.0;
  for (double r : rows) {
    total += r;
  }
  return total;
}

}  // namespace

InvolutedFunction involution(const GroupFunction& f) {
  f.box.validate();
  const double r = f.box.max_radius();
  SupportBox box;
  box.x = {-r, r};
  box.y = {-r, r};
  box.theta = f.box.full_circle() ? Interval{0.0, kTwoPi}
                                  : Interval{kTwoPi - f.box.theta.hi, kTwoPi - f.box.theta.lo};
  GroupFunction star{[f](const GroupElement& g) { return std::conj(f(inverse(g))); }, box};
  return {f, star};
}

Complex oslash(const CosetFunction& psi, const GroupFunction& f, const CosetPoint& point,
               const QuadratureSpec& q) {
  const GroupElement g = point.representative();
  return integrate_haar(
      [&](const GroupElement& k) {
        const Complex fk = f(k);
        if (fk == Complex{}) {
          return Complex{};
        }
        return psi(coset_project(compose(g, inverse(k)))) * fk;
      },
      f.box, q);
}

Complex oslash_periodized_kernel(const CosetFunction& psi, const GroupFunction& f,
                                 const CosetPoint& point, const QuadratureSpec& q) {
  f.box.validate();
  const GroupElement g = point.representative();
  const double r = f.box.max_radius();
  return integrate_haar(
      [&](const GroupElement& h) {
        // h^{-1} o gamma^{-1} o g lands in f's box only if |x(g) - gamma - x(h)| <= r.
        const double dx = g.x1() - h.x1();
        const double dy = g.x2() - h.x2();
        const GroupElement hinv = inverse(h);
        Complex kernel{};
        for (int a = static_cast<int>(std::ceil(dx - r)); a <= static_cast<int>(std::floor(dx + r));
             ++a) {
          for (int b = static_cast<int>(std::ceil(dy - r));
               b <= static_cast<int>(std::floor(dy + r)); ++b) {
            const GroupElement shifted(g.x1() - a, g.x2() - b, g.theta());
            kernel += f(compose(hinv, shifted));
          }
        }
        if (kernel == Complex{}) {
          return Complex{};
        }
        return psi(CosetPoint(h.x1(), h.x2(), h.theta())) * kernel;
      },
      fundamental_domain(), q);
}

CosetFunction oslash_function(const CosetFunction& psi, const GroupFunction& f,
                              const QuadratureSpec& q) {
  return {[psi, f, q](const CosetPoint& c) { return oslash(psi, f, c, q); }, fundamental_domain()};
}

SpectralData convolution_spectral_data(const GroupFunction& f1, const GroupFunction& f2,
                                       int k3_max, double rho_max, const QuadratureSpec& q,
                                       const SpectralOptions& opt) {
  if (k3_max < 0) {
    throw InvalidArgument("convolution_spectral_data: k3_max must be >= 0");
  }
  const FourierSampler s1(f1, q);
  const FourierSampler s2(f2, q);
  SpectralData d;
  d.k3_max = k3_max;
  d.rho_max = rho_max;
  d.chars = CharCoefficients(k3_max);
  const CharCoefficients c1 = s1.char_coeffs(k3_max);
  const CharCoefficients c2 = s2.char_coeffs(k3_max);
  for (int k = -k3_max; k <= k3_max; ++k) {
    d.chars[k] = c1[k] * c2[k];
  }
  d.shells = enumerate_shells(rho_max);
  for (const LatticeShell& shell : d.shells) {
    const double p = kTwoPi * shell.rho;
    const int inner = spectral_row_band(k3_max, p, s2.max_radius(), opt);
    const int rows = spectral_row_band(inner, p, s1.max_radius(), opt);
    const FourierMatrix b1 = s1.block(p, rows, inner);
    const FourierMatrix b2 = s2.block(p, inner, k3_max);
    for (int m = -k3_max; m <= k3_max; ++m) {
      d.tail = std::max({d.tail, std::abs(b2(inner, m)), std::abs(b2(-inner, m))});
    }
    for (int m = -inner; m <= inner; ++m) {
      d.tail = std::max({d.tail, std::abs(b1(rows, m)), std::abs(b1(-rows, m))});
    }
    // Entries of (f1 * f2)^ are the array product f1^ f2^; see se2_fourier.hpp.
    d.blocks.push_back(operator_product(b2, b1));
  }
  if (d.tail > opt.tail_tolerance) {
    throw ConvergenceError("convolution_spectral_data: n-tail exceeds tolerance");
  }
  return d;
}

Complex oslash_series(const SpectralData& product_data, const CosetPoint& point,
                      double lambda_rec) {
  return lambda_rec * reconstruct_shells(product_data, point);
}

double norm_via_convolution(const GroupFunction& f, const QuadratureSpec& q) {
  const InvolutedFunction star = involution(f);
  return oslash(periodization(f), star.function, CosetPoint(0.0, 0.0, 0.0), q).real();
}

double l1_norm_group(const GroupFunction& f, const QuadratureSpec& q) {
  return integrate_haar([&](const GroupElement& g) { return Complex(std::abs(f(g))); }, f.box, q)
      .real();
}

double l1_norm_coset(const CosetFunction& psi, const QuadratureSpec& q, Convention convention) {
  const double s = coset_sum(psi, q, false);
  return convention == Convention::weil ? s : kTwoPi * s;
}

double l2_norm_coset(const CosetFunction& psi, const QuadratureSpec& q, Convention convention) {
  const double s = coset_sum(psi, q, true);
  return std::sqrt(convention == Convention::weil ? s : kTwoPi * s);
}

}  // namespace se2h
