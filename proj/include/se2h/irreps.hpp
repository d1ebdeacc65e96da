#pragma once

// Unitary irreducible representations of SE(2): the infinite-dimensional
// U_p (p > 0) in the circular basis e_k(alpha) = exp(i k alpha), and the
// characters chi_n.

#include <vector>

#include "se2h/se2_core.hpp"

namespace se2h {

/// Radial frequency p > 0 labelling U_p.
class RadialFrequency {
 public:
  explicit RadialFrequency(double p);
  double value() const { return p_; }

 private:
  double p_;
};

/// Coefficients c_k, k = -N..N, of a vector in L^2(S^1).
class CircleVector {
 public:
  explicit CircleVector(int band);
  /// The basis vector e_k truncated to `band`.
  static CircleVector basis(int band, int k);

  int band() const { return band_; }
  Complex& operator[](int k) { return c_[k + band_]; }
  const Complex& operator[](int k) const { return c_[k + band_]; }

 private:
  int band_;
  std::vector<Complex> c_;
};

/// i^k for integer k, exact.
Complex i_pow(int k);

/// Closed form u_mn(g(a, phi, theta), p) = i^{m-n} e^{-i(m theta + (n-m) phi)} J_{m-n}(p a).
Complex matrix_element(int m, int n, const PolarElement& g, RadialFrequency p);
Complex matrix_element(int m, int n, const GroupElement& g, RadialFrequency p);

/// Sign convention for the exponent of the translation phase in the
/// defining action [U_p(g) phi](u) = exp(s i p <u, t>) phi(R^T u).
enum class ActionSign { plus = 1, minus = -1 };

/// Equal-weight quadrature of <U_p(g) e_m, e_n> over the circle.
/// ActionSign::plus is the action whose matrix elements are the closed form
/// above; ActionSign::minus differs from it by (-1)^{m-n}.
Complex matrix_element_oracle(int m, int n, const GroupElement& g, RadialFrequency p, int nodes,
                              ActionSign sign = ActionSign::plus);

/// chi_n(g) = e^{i n theta}.
Complex character(int n, const GroupElement& g);

/// (U_p(g) v)_n = sum_m v_m u_mn(g, p), truncated to the band of v.
CircleVector apply_irrep(const GroupElement& g, RadialFrequency p, const CircleVector& v);

/// Working band for accuracy at |n| <= n_eff: n_eff + ceil(p a_max) + 20.
int margin_band(int n_eff, double p, double a_max);

}  // namespace se2h
