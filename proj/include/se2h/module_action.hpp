#pragma once

// Coset functions as a module over group functions: the involution, the
// action psi (/) f, its spectral series and the convolution route to the norm.

#include "se2h/coset_series.hpp"

namespace se2h {

/// f*(g) = conj(f(g^{-1})). `function.box` is a box containing the support.
struct InvolutedFunction {
  GroupFunction original;
  GroupFunction function;

  Complex operator()(const GroupElement& g) const { return function(g); }
};

InvolutedFunction involution(const GroupFunction& f);

/// (psi (/) f)(Gamma g) = \int psi(Gamma h) f(h^{-1} o g) dh, computed as
/// \int psi(Gamma g o k^{-1}) f(k) dk over f's box.
Complex oslash(const CosetFunction& psi, const GroupFunction& f, const CosetPoint& point,
               const QuadratureSpec& q);

/// The same value as an integral over Omega (weight (4 pi^2)^{-1}) against
/// the periodized kernel sum_gamma f(h^{-1} o gamma^{-1} o g).
Complex oslash_periodized_kernel(const CosetFunction& psi, const GroupFunction& f,
                                 const CosetPoint& point, const QuadratureSpec& q);

/// psi (/) f as a coset function; every evaluation is a quadrature.
CosetFunction oslash_function(const CosetFunction& psi, const GroupFunction& f,
                              const QuadratureSpec& q);

/// Spectral data of f1 * f2 built from products f1^(p) f2^(p) at each
/// lattice radius and from f1^[k] f2^[k]. Inner bands follow the margin rule.
SpectralData convolution_spectral_data(const GroupFunction& f1, const GroupFunction& f2,
                                       int k3_max, double rho_max, const QuadratureSpec& q,
                                       const SpectralOptions& opt = {});

/// lambda_rec times the truncated four-fold series at the point.
Complex oslash_series(const SpectralData& product_data, const CosetPoint& point,
                      double lambda_rec);

/// (f~ (/) f*)(Gamma e) by direct quadrature. Compares with the WEIL norm of f~.
double norm_via_convolution(const GroupFunction& f, const QuadratureSpec& q);

/// \int |f| dg over f's box.
double l1_norm_group(const GroupFunction& f, const QuadratureSpec& q);

/// \int_Omega |psi| and (\int_Omega |psi|^2)^{1/2} in the given convention.
double l1_norm_coset(const CosetFunction& psi, const QuadratureSpec& q,
                     Convention convention = Convention::weil);
double l2_norm_coset(const CosetFunction& psi, const QuadratureSpec& q,
                     Convention convention = Convention::weil);

}  // namespace se2h
