#pragma once

// Operator-valued Fourier transform on SE(2) in the circular basis.
//
// Layout: entry (n, m) holds f^(p)_{nm} = <f^(p) e_n, e_m>. With this
// layout the operator composition A o B has entries (B * A) as arrays,
// so the convolution law (f1 * f2)^ = f2^ o f1^ reads
// entries(f1 * f2) = entries(f1) * entries(f2).

#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "se2h/irreps.hpp"
#include "se2h/se2_core.hpp"

namespace se2h {

class FourierMatrix {
 public:
  FourierMatrix() = default;
  /// Rows n in [-row_band, row_band], columns m in [-col_band, col_band].
  FourierMatrix(double p, int row_band, int col_band);
  static FourierMatrix square(double p, int band) { return {p, band, band}; }

  double p() const { return p_; }
  int row_band() const { return rows_; }
  int col_band() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(int n, int m) { return data_[index(n, m)]; }
  const Complex& operator()(int n, int m) const { return data_[index(n, m)]; }

  /// The adjoint operator: entries conj(F(m, n)). Requires a square block.
  FourierMatrix adjoint() const;
  /// Sub-block restricted to |n| <= rows, |m| <= cols.
  FourierMatrix truncated(int rows, int cols) const;
  double hilbert_schmidt_sq() const;
  double max_abs() const;

  FourierMatrix& operator+=(const FourierMatrix& other);
  FourierMatrix& operator*=(Complex s);

 private:
  std::size_t index(int n, int m) const {
    return static_cast<std::size_t>(n + rows_) * (2 * cols_ + 1) + (m + cols_);
  }

  double p_ = 0.0;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

/// Operator composition A o B (apply B first). Inner bands must match:
/// a.row_band() == b.col_band().
FourierMatrix operator_product(const FourierMatrix& a, const FourierMatrix& b);

/// max |a(n,m) - b(n,m)| over |n| <= rows, |m| <= cols.
double max_abs_diff(const FourierMatrix& a, const FourierMatrix& b, int rows, int cols);

/// f^[n] for n = -band..band.
class CharCoefficients {
 public:
  explicit CharCoefficients(int band) : band_(band), c_(2 * static_cast<std::size_t>(band) + 1) {}
  int band() const { return band_; }
  Complex& operator[](int n) { return c_[n + band_]; }
  const Complex& operator[](int n) const { return c_[n + band_]; }

 private:
  int band_;
  std::vector<Complex> c_;
};

/// Samples f once on its tensor grid and evaluates Fourier matrices at any
/// radial frequency from the cached samples.
class FourierSampler {
 public:
  FourierSampler(const GroupFunction& f, const QuadratureSpec& q);

  /// f^(p) entries for |n| <= row_band and |m| <= col_band.
  FourierMatrix block(double p, int row_band, int col_band) const;
  FourierMatrix matrix(double p, int band) const { return block(p, band, band); }
  /// f^[n] from the same samples.
  Complex char_coeff(int n) const;
  CharCoefficients char_coeffs(int band) const;

  const SupportBox& box() const { return box_; }
  double max_radius() const { return box_.max_radius(); }

 private:
  // Columns m in [-band, band] of w_xy F_m(xy), where
  // F_m(xy) = sum_k w_k f(xy, theta_k) e^{i m theta_k}.
  std::shared_ptr<const Eigen::MatrixXcd> theta_transforms(int band) const;

  SupportBox box_;
  std::vector<double> radius_;
  std::vector<double> angle_;
  std::vector<double> xy_weight_;  // includes (4 pi^2)^{-1}
  std::vector<double> theta_nodes_;
  std::vector<double> theta_weights_;
  std::vector<Complex> samples_;  // [xy * n_theta + k]

  mutable std::mutex cache_mutex_;
  mutable int cached_band_ = -1;
  mutable std::shared_ptr<const Eigen::MatrixXcd> cached_;
};

/// f^(p)_{nm} = \int f(g) conj(u_mn(g, p)) dg on a square band.
FourierMatrix fourier_matrix(const GroupFunction& f, RadialFrequency p, int band,
                             const QuadratureSpec& q);

/// f^[n] = \int f(g) conj(chi_n(g)) dg, by direct Haar quadrature.
Complex char_coeff(const GroupFunction& f, int n, const QuadratureSpec& q);

/// Fourier matrices at the Gauss-Legendre nodes of [0, p_max]. Each block
/// has column band `band` and row band margin_band(band, p, a_max).
struct RadialSamples {
  std::vector<double> p;
  std::vector<double> weight;
  std::vector<FourierMatrix> matrices;
  /// Bound on |p tr[f^(p) U_p(g)]| at the last node.
  double tail_tolerance = 1e-3;
};

RadialSamples sample_radial(const GroupFunction& f, double p_max, int radial_nodes, int band,
                            const QuadratureSpec& q);

/// Truncated inversion f(g) ~ \int_0^{p_max} tr[f^(p) U_p(g)] p dp. Throws
/// ConvergenceError when the integrand at the largest node exceeds the
/// sample set's tail tolerance.
Complex inverse_transform(const RadialSamples& samples, const GroupElement& g);

/// \int_0^{p_max} ||f^(p)||_HS^2 p dp from the samples.
double plancherel_group(const RadialSamples& samples);

/// (f1 * f2)(h) = \int f1(g) f2(g^{-1} o h) dg, integrated as
/// \int f1(h o k^{-1}) f2(k) dk over f2's box.
Complex convolve_direct(const GroupFunction& f1, const GroupFunction& f2, const GroupElement& h,
                        const QuadratureSpec& q);

/// f1 * f2 as a group function with a support box containing
/// supp(f1) o supp(f2). Each evaluation is a quadrature.
GroupFunction convolution(const GroupFunction& f1, const GroupFunction& f2,
                          const QuadratureSpec& q);

}  // namespace se2h
