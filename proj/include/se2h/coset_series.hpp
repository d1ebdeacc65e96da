#pragma once

// Fourier analysis on the coset space Z^2 \ SE(2): the exponential basis,
// coefficients by direct quadrature and by the spectral formula at the
// lattice radii, reconstruction and Plancherel sums.
//
// Two measure conventions on Omega are in play. ORTHONORMAL uses
// (2pi)^{-1} dx dy dtheta, making psi_k orthonormal. WEIL uses
// (4pi^2)^{-1} dx dy dtheta. coeff_direct is ORTHONORMAL; coeff_spectral
// evaluates the lattice-radius formulas as they stand, and the ratio between
// the two is measured by audit_normalization.

#include <functional>
#include <map>
#include <vector>

#include "se2h/lattice_spectrum.hpp"
#include "se2h/se2_fourier.hpp"

namespace se2h {

/// A function on the coset space, evaluated through Omega representatives.
struct CosetFunction {
  std::function<Complex(const CosetPoint&)> eval;
  /// Part of Omega outside of which eval vanishes. Quadrature runs over it.
  SupportBox support = fundamental_domain();

  Complex operator()(const CosetPoint& c) const { return eval(c); }
};

/// f~(Gamma g) = sum_gamma f(gamma o g). The support hint is f's box when
/// that box lies in Omega.
CosetFunction periodization(const GroupFunction& f);

/// psi_k itself as a coset function.
CosetFunction basis_function(const LatticeVector& k);

struct BasisIndexBox {
  int k1_max = 0;
  int k2_max = 0;
  int k3_max = 0;

  static BasisIndexBox cube(int k) { return {k, k, k}; }
  void validate() const;
  bool contains(const LatticeVector& k) const;
  std::size_t size() const;
  /// Indices in lexicographic order.
  std::vector<LatticeVector> indices() const;
};

/// The Dirac line carrying shell point (k1, k2) into Q^k(p)_{mn}: supported
/// at p0 = 2 pi rho, nonzero only when k3 = -m, with amplitude
/// e^{i(m-n) Phi} / (2 pi rho).
struct SpectralLine {
  double p0 = 0.0;
  int k3 = 0;
  Complex amplitude;
};

SpectralLine spectral_line(int k1, int k2, int m, int n);

/// Coefficient table keyed by k, iterated in lexicographic order.
class CosetCoefficients {
 public:
  void set(const LatticeVector& k, Complex value) { values_[k] = value; }
  Complex at(const LatticeVector& k) const;
  bool contains(const LatticeVector& k) const { return values_.count(k) != 0; }
  std::size_t size() const { return values_.size(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  std::map<LatticeVector, Complex> values_;
};

/// psi_k(x, y, theta) = exp(2 pi i (k1 x + k2 y)) exp(i k3 theta).
Complex basis_eval(const LatticeVector& k, const CosetPoint& point);

/// (2pi)^{-1} \int_Omega psi conj(psi_k) dx dy dtheta.
Complex coeff_direct(const CosetFunction& psi, const LatticeVector& k, const QuadratureSpec& q);

/// coeff_direct over a whole index box, sharing one set of samples.
CosetCoefficients coeff_direct_table(const CosetFunction& psi, const BasisIndexBox& box,
                                     const QuadratureSpec& q);

/// Options for the spectral branch.
struct SpectralOptions {
  /// Extra Bessel orders beyond ceil(p a_max) in the n-sum.
  int band_margin = 20;
  /// Largest allowed |term| at the edge of the n-sum.
  double tail_tolerance = 1e-10;
};

/// Row band of the n-sum at radius p for columns |m| <= k3_max.
int spectral_row_band(int k3_max, double p, double a_max, const SpectralOptions& opt);

/// For (k1, k2) != 0: sum over |n| <= N of e^{-i(n + k3) Phi} f^(2 pi rho)_{n, -k3}.
/// For (0, 0, k3): char_coeff(f, k3). Throws ConvergenceError when the
/// n-tail has not decayed below opt.tail_tolerance.
Complex coeff_spectral(const GroupFunction& f, const LatticeVector& k, int band,
                       const QuadratureSpec& q, const SpectralOptions& opt = {});
/// Same with the band from spectral_row_band.
Complex coeff_spectral(const GroupFunction& f, const LatticeVector& k, const QuadratureSpec& q,
                       const SpectralOptions& opt = {});

/// Everything the spectral series needs: character coefficients for
/// |k3| <= k3_max and one Fourier block per shell with rho <= rho_max.
struct SpectralData {
  int k3_max = 0;
  double rho_max = 0.0;
  CharCoefficients chars{0};
  std::vector<LatticeShell> shells;
  /// blocks[s] at p = 2 pi shells[s].rho; columns |m| <= k3_max.
  std::vector<FourierMatrix> blocks;
  /// Largest |entry| found in the edge rows of any block.
  double tail = 0.0;
};

SpectralData spectral_data(const GroupFunction& f, int k3_max, double rho_max,
                           const QuadratureSpec& q, const SpectralOptions& opt = {});

/// Spectral coefficients for every k with (k1, k2) = 0 or on a shell,
/// |k3| <= k3_max.
CosetCoefficients coeff_spectral_table(const SpectralData& data);

/// sum_k lambda_rec c(k) psi_k(point) over the table.
Complex reconstruct(const CosetCoefficients& coeffs, const CosetPoint& point, double lambda_rec);

/// The series term by term over (k1, k2), k3 and n, without calibration.
Complex reconstruct_terms(const SpectralData& data, const CosetPoint& point);

/// The series grouped by shells through the kernels K_rho^{k - n}.
Complex reconstruct_shells(const SpectralData& data, const CosetPoint& point);

struct PlancherelParts {
  double character = 0.0;
  double shells = 0.0;
  double total() const { return character + shells; }
};

/// sum_k |f^[k]|^2 + sum over shells, angles and m of |sum_n e^{-i n theta} f^(2 pi rho)_{nm}|^2.
PlancherelParts plancherel_spectral(const SpectralData& data);

enum class Convention { orthonormal, weil };

/// \int_Omega |psi|^2 with weight (2pi)^{-1} (orthonormal) or (4pi^2)^{-1} (weil).
double plancherel_direct(const CosetFunction& psi, const QuadratureSpec& q,
                         Convention convention = Convention::orthonormal);

struct NormalizationAudit {
  double lambda = 0.0;
  /// Largest |ratio - lambda| / |lambda| over the indices used.
  double max_relative_spread = 0.0;
  /// Standard deviation of the ratios divided by |lambda|.
  double relative_std = 0.0;
  /// Largest |imag(ratio)| / |lambda|.
  double max_imag = 0.0;
  std::size_t used = 0;
};

/// Ratios spectral / direct over shared indices with |direct| > threshold.
NormalizationAudit audit_normalization(const CosetCoefficients& spectral,
                                       const CosetCoefficients& direct, double threshold = 1e-6);

/// Audited value of spectral / direct, pinned in tests/golden/calibration.json.
inline constexpr double kCalibratedLambda = 0.15915494309189543;
inline constexpr double kCalibratedLambdaRec = 1.0 / kCalibratedLambda;

}  // namespace se2h
