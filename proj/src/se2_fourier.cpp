#include "se2h/se2_fourier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "se2h/parallel.hpp"
#include "se2h/special_functions.hpp"

namespace se2h {

namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

void require_band(int band, const char* what) {
  if (band < 0) {
    throw InvalidArgument(std::string(what) + ": band must be >= 0");
  }
}

}  // namespace

FourierMatrix::FourierMatrix(double p, int row_band, int col_band)
    : p_(p), rows_(row_band), cols_(col_band) {
  require_band(row_band, "FourierMatrix");
  require_band(col_band, "FourierMatrix");
  data_.assign(static_cast<std::size_t>(2 * rows_ + 1) * (2 * cols_ + 1), Complex{});
}

FourierMatrix FourierMatrix::adjoint() const {
  if (!is_square()) {
    throw InvalidArgument("FourierMatrix::adjoint: square block required");
  }
  FourierMatrix out(p_, rows_, cols_);
  for (int n = -rows_; n <= rows_; ++n) {
    for (int m = -cols_; m <= cols_; ++m) {
      out(n, m) = std::conj((*this)(m, n));
    }
  }
  return out;
}

FourierMatrix FourierMatrix::truncated(int rows, int cols) const {
  if (rows > rows_ || cols > cols_) {
    throw InvalidArgument("FourierMatrix::truncated: band exceeds stored block");
  }
  FourierMatrix out(p_, rows, cols);
  for (int n = -rows; n <= rows; ++n) {
    for (int m = -cols; m <= cols; ++m) {
      out(n, m) = (*this)(n, m);
    }
  }
  return out;
}

double FourierMatrix::hilbert_schmidt_sq() const {
  double s = 0.0;
  for (const Complex& z : data_) {
    s += std::norm(z);
  }
  return s;
}

double FourierMatrix::max_abs() const {
  double s = 0.0;
  for (const Complex& z : data_) {
    s = std::max(s, std::abs(z));
  }
  return s;
}

FourierMatrix& FourierMatrix::operator+=(const FourierMatrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) {
    throw InvalidArgument("FourierMatrix: band mismatch in +=");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] += other.data_[i];
  }
  return *this;
}

FourierMatrix& FourierMatrix::operator*=(Complex s) {
  for (Complex& z : data_) {
    z *= s;
  }
  return *this;
}

FourierMatrix operator_product(const FourierMatrix& a, const FourierMatrix& b) {
  // (A o B)_{nm} = <A B e_n, e_m> = sum_k B_{nk} A_{km}.
  if (a.row_band() != b.col_band()) {
    throw InvalidArgument("operator_product: inner bands differ");
  }
  const int inner = a.row_band();
  FourierMatrix out(a.p(), b.row_band(), a.col_band());
  for (int n = -b.row_band(); n <= b.row_band(); ++n) {
    for (int k = -inner; k <= inner; ++k) {
      const Complex bnk = b(n, k);
      if (bnk == Complex{}) {
        continue;
      }
      for (int m = -a.col_band(); m <= a.col_band(); ++m) {
        out(n, m) += bnk * a(k, m);
      }
    }
  }
  return out;
}

double max_abs_diff(const FourierMatrix& a, const FourierMatrix& b, int rows, int cols) {
  if (rows > std::min(a.row_band(), b.row_band()) || cols > std::min(a.col_band(), b.col_band())) {
    throw InvalidArgument("max_abs_diff: band exceeds a block");
  }
  double d = 0.0;
  for (int n = -rows; n <= rows; ++n) {
    for (int m = -cols; m <= cols; ++m) {
      d = std::max(d, std::abs(a(n, m) - b(n, m)));
    }
  }
  return d;
}

FourierSampler::FourierSampler(const GroupFunction& f, const QuadratureSpec& q) : box_(f.box) {
  const HaarGrid grid(box_, q);
  const std::size_t nx = grid.x.nodes.size();
  const std::size_t ny = grid.y.nodes.size();
  const std::size_t nt = grid.theta.nodes.size();
  theta_nodes_ = grid.theta.nodes;
  theta_weights_ = grid.theta.weights;
  radius_.resize(nx * ny);
  angle_.resize(nx * ny);
  xy_weight_.resize(nx * ny);
  samples_.assign(nx * ny * nt, Complex{});
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const std::size_t xy = i * ny + j;
      const double x = grid.x.nodes[i];
      const double y = grid.y.nodes[j];
      radius_[xy] = std::hypot(x, y);
      angle_[xy] = std::atan2(y, x);
      xy_weight_[xy] = grid.x.weights[i] * grid.y.weights[j] / kFourPiSq;
    }
  }
  parallel_for(nx * ny, [&](std::size_t xy) {
    const double x = grid.x.nodes[xy / ny];
    const double y = grid.y.nodes[xy % ny];
    for (std::size_t k = 0; k < nt; ++k) {
      const double t = theta_nodes_[k];
      if (box_.theta.contains(t)) {
        samples_[xy * nt + k] = f({x, y, t});
      }
    }
  });
}

std::shared_ptr<const Eigen::MatrixXcd> FourierSampler::theta_transforms(int band) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (cached_ && cached_band_ >= band) {
    return cached_;
  }
  const std::size_t nxy = radius_.size();
  const std::size_t nt = theta_nodes_.size();
  const int cols = 2 * band + 1;
  // phase(k, m + band) = w_k e^{i m theta_k}
  Eigen::MatrixXcd phase(nt, cols);
  for (std::size_t k = 0; k < nt; ++k) {
    for (int m = -band; m <= band; ++m) {
      phase(k, m + band) = theta_weights_[k] * std::polar(1.0, m * theta_nodes_[k]);
    }
  }
  Eigen::MatrixXcd samples(nxy, nt);
  for (std::size_t xy = 0; xy < nxy; ++xy) {
    for (std::size_t k = 0; k < nt; ++k) {
      samples(xy, k) = samples_[xy * nt + k] * xy_weight_[xy];
    }
  }
  auto out = std::make_shared<Eigen::MatrixXcd>(samples * phase);
  cached_ = std::move(out);
  cached_band_ = band;
  return cached_;
}

FourierMatrix FourierSampler::block(double p, int row_band, int col_band) const {
  require_band(row_band, "FourierSampler::block");
  require_band(col_band, "FourierSampler::block");
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw InvalidArgument("FourierSampler::block: p must be finite and > 0");
  }
  const auto transforms = theta_transforms(col_band);
  const int offset = static_cast<int>(transforms->cols() - 1) / 2 - col_band;
  const std::size_t nxy = radius_.size();
  const int qmax = row_band + col_band;
  // kernel(xy, q + qmax) = e^{-i q phi} J_q(p a), q = m - n.
  Eigen::MatrixXcd kernel(nxy, 2 * qmax + 1);
  parallel_for(nxy, [&](std::size_t xy) {
    std::vector<double> j;
    bessel_j_band(qmax, p * radius_[xy], j);
    const Complex step = std::polar(1.0, -angle_[xy]);
    Complex up{1.0, 0.0};
    kernel(xy, qmax) = j[qmax];
    for (int q = 1; q <= qmax; ++q) {
      up *= step;
      kernel(xy, qmax + q) = up * j[qmax + q];
      kernel(xy, qmax - q) = std::conj(up) * j[qmax - q];
    }
  });
  const Eigen::MatrixXcd h =
      kernel.transpose() * transforms->middleCols(offset, 2 * col_band + 1);
  FourierMatrix out(p, row_band, col_band);
  for (int n = -row_band; n <= row_band; ++n) {
    for (int m = -col_band; m <= col_band; ++m) {
      out(n, m) = i_pow(n - m) * h(m - n + qmax, m + col_band);
    }
  }
  return out;
}

Complex FourierSampler::char_coeff(int n) const {
  const auto transforms = theta_transforms(std::abs(n));
  return transforms->col((transforms->cols() - 1) / 2 - n).sum();
}

CharCoefficients FourierSampler::char_coeffs(int band) const {
  require_band(band, "FourierSampler::char_coeffs");
  const auto transforms = theta_transforms(band);
  CharCoefficients out(band);
  for (int n = -band; n <= band; ++n) {
    out[n] = transforms->col((transforms->cols() - 1) / 2 - n).sum();
  }
  return out;
}

FourierMatrix fourier_matrix(const GroupFunction& f, RadialFrequency p, int band,
                             const QuadratureSpec& q) {
  return FourierSampler(f, q).matrix(p.value(), band);
}

Complex char_coeff(const GroupFunction& f, int n, const QuadratureSpec& q) {
  return integrate_haar(
      [&](const GroupElement& g) { return f(g) * std::conj(character(n, g)); }, f.box, q);
}

RadialSamples sample_radial(const GroupFunction& f, double p_max, int radial_nodes, int band,
                            const QuadratureSpec& q) {
  if (!(p_max > 0.0) || radial_nodes < 1) {
    throw InvalidArgument("sample_radial: need p_max > 0 and at least one node");
  }
  const FourierSampler sampler(f, q);
  const Rule1D rule = gauss_legendre(radial_nodes, 0.0, p_max);
  RadialSamples out;
  out.p = rule.nodes;
  out.weight = rule.weights;
  out.matrices.reserve(rule.nodes.size());
  for (double p : rule.nodes) {
    // Columns carry the theta band; rows follow the margin rule so the
    // trace against U_p(g) sees every Bessel order that is not negligible.
    out.matrices.push_back(sampler.block(p, margin_band(band, p, sampler.max_radius()), band));
  }
  return out;
}

namespace {

// tr[F U_p(g)] = sum_{n,m} F_{nm} u_mn(g, p).
Complex trace_with_irrep(const FourierMatrix& f, const PolarElement& g) {
  const int rows = f.row_band();
  const int cols = f.col_band();
  const int qmax = rows + cols;
  const std::vector<double> j = bessel_j_band(qmax, f.p() * g.a());
  Complex total{};
  for (int m = -cols; m <= cols; ++m) {
    for (int n = -rows; n <= rows; ++n) {
      const int q = m - n;
      const double jq = j[q + qmax];
      if (jq == 0.0) {
        continue;
      }
      total += f(n, m) * i_pow(q) * std::polar(jq, -(m * g.theta() + (n - m) * g.phi()));
    }
  }
  return total;
}

}  // namespace

Complex inverse_transform(const RadialSamples& samples, const GroupElement& g) {
  if (samples.p.empty()) {
    throw InvalidArgument("inverse_transform: no radial samples");
  }
  const PolarElement pg = to_polar(g);
  Complex total{};
  double last = 0.0;
  for (std::size_t i = 0; i < samples.p.size(); ++i) {
    const Complex integrand = samples.p[i] * trace_with_irrep(samples.matrices[i], pg);
    total += samples.weight[i] * integrand;
    last = std::abs(integrand);
  }
  if (last > samples.tail_tolerance) {
    std::ostringstream msg;
    msg << std::scientific << "inverse_transform: radial integrand " << last
        << " at p_max exceeds tolerance " << samples.tail_tolerance;
    throw ConvergenceError(msg.str());
  }
  return total;
}

double plancherel_group(const RadialSamples& samples) {
  double total = 0.0;
  for (std::size_t i = 0; i < samples.p.size(); ++i) {
    total += samples.weight[i] * samples.p[i] * samples.matrices[i].hilbert_schmidt_sq();
  }
  return total;
}

Complex convolve_direct(const GroupFunction& f1, const GroupFunction& f2, const GroupElement& h,
                        const QuadratureSpec& q) {
  // g = h o k^{-1}; the Haar measure is inversion invariant.
  return integrate_haar(
      [&](const GroupElement& k) {
        const Complex b = f2(k);
        if (b == Complex{}) {
          return Complex{};
        }
        return f1(compose(h, inverse(k))) * b;
      },
      f2.box, q);
}

GroupFunction convolution(const GroupFunction& f1, const GroupFunction& f2,
                          const QuadratureSpec& q) {
  f1.box.validate();
  f2.box.validate();
  const double r = f2.box.max_radius();
  SupportBox box;
  box.x = {f1.box.x.lo - r, f1.box.x.hi + r};
  box.y = {f1.box.y.lo - r, f1.box.y.hi + r};
  double lo = f1.box.theta.lo + f2.box.theta.lo;
  double hi = f1.box.theta.hi + f2.box.theta.hi;
  if (lo >= kTwoPi) {
    lo -= kTwoPi;
    hi -= kTwoPi;
  }
  if (f1.box.full_circle() || f2.box.full_circle() || hi > kTwoPi) {
    lo = 0.0;
    hi = kTwoPi;
  }
  box.theta = {lo, hi};
  return GroupFunction{
      [f1, f2, q](const GroupElement& h) { return convolve_direct(f1, f2, h, q); }, box};
}

}  // namespace se2h
