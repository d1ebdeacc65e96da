#include "se2h/coset_series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "se2h/parallel.hpp"

namespace se2h {

namespace {

bool inside_omega(const SupportBox& box) {
  return box.x.lo >= 0.0 && box.x.hi <= 1.0 && box.y.lo >= 0.0 && box.y.hi <= 1.0;
}

void throw_tail(const char* where, double tail, double tol) {
  std::ostringstream msg;
  msg << std::scientific << where << ": n-tail " << tail << " exceeds tolerance " << tol;
  throw ConvergenceError(msg.str());
}

// Samples of psi times the orthonormal weight on the support grid.
struct WeightedSamples {
  HaarGrid grid;
  std::vector<Complex> values;  // [(i * ny + j) * nt + t]
};

WeightedSamples sample_weighted(const CosetFunction& psi, const QuadratureSpec& q) {
  WeightedSamples s{HaarGrid(psi.support, q), {}};
  const auto& g = s.grid;
  const std::size_t nx = g.x.nodes.size();
  const std::size_t ny = g.y.nodes.size();
  const std::size_t nt = g.theta.nodes.size();
  s.values.assign(nx * ny * nt, Complex{});
  parallel_for(nx * ny, [&](std::size_t ij) {
    const std::size_t i = ij / ny;
    const std::size_t j = ij % ny;
    for (std::size_t t = 0; t < nt; ++t) {
      const double theta = g.theta.nodes[t];
      if (!psi.support.theta.contains(theta)) {
        continue;
      }
      const CosetPoint c(g.x.nodes[i], g.y.nodes[j], theta);
      s.values[ij * nt + t] = kTwoPi * g.weight(i, j, t) * psi(c);
    }
  });
  return s;
}

double edge_tail(const FourierMatrix& block) {
  double tail = 0.0;
  const int r = block.row_band();
  for (int m = -block.col_band(); m <= block.col_band(); ++m) {
    tail = std::max({tail, std::abs(block(r, m)), std::abs(block(-r, m))});
  }
  return tail;
}

}  // namespace

CosetFunction periodization(const GroupFunction& f) {
  f.box.validate();
  CosetFunction out;
  out.eval = [f](const CosetPoint& c) { return periodize(f, c.representative()); };
  if (inside_omega(f.box)) {
    out.support = f.box;
  }
  return out;
}

CosetFunction basis_function(const LatticeVector& k) {
  return {[k](const CosetPoint& c) { return basis_eval(k, c); }, fundamental_domain()};
}

void BasisIndexBox::validate() const {
  if (k1_max < 0 || k2_max < 0 || k3_max < 0) {
    throw InvalidArgument("BasisIndexBox: bounds must be >= 0");
  }
}

bool BasisIndexBox::contains(const LatticeVector& k) const {
  return std::abs(k.k1) <= k1_max && std::abs(k.k2) <= k2_max && std::abs(k.k3) <= k3_max;
}

std::size_t BasisIndexBox::size() const {
  validate();
  return static_cast<std::size_t>(2 * k1_max + 1) * (2 * k2_max + 1) * (2 * k3_max + 1);
}

std::vector<LatticeVector> BasisIndexBox::indices() const {
  validate();
  std::vector<LatticeVector> out;
  out.reserve(size());
  for (int a = -k1_max; a <= k1_max; ++a) {
    for (int b = -k2_max; b <= k2_max; ++b) {
      for (int c = -k3_max; c <= k3_max; ++c) {
        out.push_back({a, b, c});
      }
    }
  }
  return out;
}

SpectralLine spectral_line(int k1, int k2, int m, int n) {
  const RhoPhi rp = rho_phi(k1, k2);
  const double p0 = kTwoPi * rp.rho;
  return {p0, -m, std::polar(1.0 / p0, (m - n) * rp.phi)};
}

Complex CosetCoefficients::at(const LatticeVector& k) const {
  const auto it = values_.find(k);
  if (it == values_.end()) {
    throw InvalidArgument("CosetCoefficients: index not in table");
  }
  return it->second;
}

Complex basis_eval(const LatticeVector& k, const CosetPoint& point) {
  return std::polar(1.0, kTwoPi * (k.k1 * point.x() + k.k2 * point.y()) + k.k3 * point.theta());
}

Complex coeff_direct(const CosetFunction& psi, const LatticeVector& k, const QuadratureSpec& q) {
  const WeightedSamples s = sample_weighted(psi, q);
  const auto& g = s.grid;
  const std::size_t ny = g.y.nodes.size();
  const std::size_t nt = g.theta.nodes.size();
  Complex total{};
  for (std::size_t i = 0; i < g.x.nodes.size(); ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      Complex row{};
      for (std::size_t t = 0; t < nt; ++t) {
        const Complex v = s.values[(i * ny + j) * nt + t];
        if (v != Complex{}) {
          row += v * std::polar(1.0, -k.k3 * g.theta.nodes[t]);
        }
      }
      total += row * std::polar(1.0, -kTwoPi * (k.k1 * g.x.nodes[i] + k.k2 * g.y.nodes[j]));
    }
  }
  return total;
}

CosetCoefficients coeff_direct_table(const CosetFunction& psi, const BasisIndexBox& box,
                                     const QuadratureSpec& q) {
  box.validate();
  const WeightedSamples s = sample_weighted(psi, q);
  const auto& g = s.grid;
  const std::size_t nx = g.x.nodes.size();
  const std::size_t ny = g.y.nodes.size();
  const std::size_t nt = g.theta.nodes.size();
  const int n1 = 2 * box.k1_max + 1;
  const int n2 = 2 * box.k2_max + 1;
  const int n3 = 2 * box.k3_max + 1;
  // theta, then y, then x.
  std::vector<Complex> a(nx * ny * n3);
  for (std::size_t ij = 0; ij < nx * ny; ++ij) {
    for (int c = 0; c < n3; ++c) {
      const int k3 = c - box.k3_max;
      Complex acc{};
      for (std::size_t t = 0; t < nt; ++t) {
        const Complex v = s.values[ij * nt + t];
        if (v != Complex{}) {
          acc += v * std::polar(1.0, -k3 * g.theta.nodes[t]);
        }
      }
      a[ij * n3 + c] = acc;
    }
  }
  std::vector<Complex> b(nx * n2 * n3);
  for (std::size_t i = 0; i < nx; ++i) {
    for (int bb = 0; bb < n2; ++bb) {
      const int k2 = bb - box.k2_max;
      for (std::size_t j = 0; j < ny; ++j) {
        const Complex e = std::polar(1.0, -kTwoPi * k2 * g.y.nodes[j]);
        for (int c = 0; c < n3; ++c) {
          b[(i * n2 + bb) * n3 + c] += e * a[(i * ny + j) * n3 + c];
        }
      }
    }
  }
  CosetCoefficients out;
  for (int aa = 0; aa < n1; ++aa) {
    const int k1 = aa - box.k1_max;
    for (int bb = 0; bb < n2; ++bb) {
      for (int c = 0; c < n3; ++c) {
        Complex acc{};
        for (std::size_t i = 0; i < nx; ++i) {
          acc += std::polar(1.0, -kTwoPi * k1 * g.x.nodes[i]) * b[(i * n2 + bb) * n3 + c];
        }
        out.set({k1, bb - box.k2_max, c - box.k3_max}, acc);
      }
    }
  }
  return out;
}

int spectral_row_band(int k3_max, double p, double a_max, const SpectralOptions& opt) {
  if (opt.band_margin < 0) {
    throw InvalidArgument("SpectralOptions: band_margin must be >= 0");
  }
  return k3_max + static_cast<int>(std::ceil(p * a_max)) + opt.band_margin;
}

Complex coeff_spectral(const GroupFunction& f, const LatticeVector& k, int band,
                       const QuadratureSpec& q, const SpectralOptions& opt) {
  if (k.k1 == 0 && k.k2 == 0) {
    return char_coeff(f, k.k3, q);
  }
  if (band < std::abs(k.k3)) {
    throw InvalidArgument("coeff_spectral: band must cover |k3|");
  }
  const RhoPhi rp = rho_phi(k.k1, k.k2);
  const FourierSampler sampler(f, q);
  const int col = std::abs(k.k3);
  const FourierMatrix block = sampler.block(kTwoPi * rp.rho, band, col);
  Complex total{};
  for (int n = -band; n <= band; ++n) {
    total += std::polar(1.0, -(n + k.k3) * rp.phi) * block(n, -k.k3);
  }
  const double tail = std::max(std::abs(block(band, -k.k3)), std::abs(block(-band, -k.k3)));
  if (tail > opt.tail_tolerance) {
    throw_tail("coeff_spectral", tail, opt.tail_tolerance);
  }
  return total;
}

Complex coeff_spectral(const GroupFunction& f, const LatticeVector& k, const QuadratureSpec& q,
                       const SpectralOptions& opt) {
  if (k.k1 == 0 && k.k2 == 0) {
    return char_coeff(f, k.k3, q);
  }
  const double p = kTwoPi * rho_phi(k.k1, k.k2).rho;
  return coeff_spectral(f, k, spectral_row_band(std::abs(k.k3), p, f.box.max_radius(), opt), q,
                        opt);
}

SpectralData spectral_data(const GroupFunction& f, int k3_max, double rho_max,
                           const QuadratureSpec& q, const SpectralOptions& opt) {
  if (k3_max < 0) {
    throw InvalidArgument("spectral_data: k3_max must be >= 0");
  }
  const FourierSampler sampler(f, q);
  SpectralData d;
  d.k3_max = k3_max;
  d.rho_max = rho_max;
  d.chars = sampler.char_coeffs(k3_max);
  d.shells = enumerate_shells(rho_max);
  d.blocks.reserve(d.shells.size());
  for (const LatticeShell& s : d.shells) {
    const double p = kTwoPi * s.rho;
    d.blocks.push_back(
        sampler.block(p, spectral_row_band(k3_max, p, sampler.max_radius(), opt), k3_max));
    d.tail = std::max(d.tail, edge_tail(d.blocks.back()));
  }
  if (d.tail > opt.tail_tolerance) {
    throw_tail("spectral_data", d.tail, opt.tail_tolerance);
  }
  return d;
}

CosetCoefficients coeff_spectral_table(const SpectralData& data) {
  CosetCoefficients out;
  for (int k3 = -data.k3_max; k3 <= data.k3_max; ++k3) {
    out.set({0, 0, k3}, data.chars[k3]);
  }
  for (std::size_t s = 0; s < data.shells.size(); ++s) {
    const LatticeShell& shell = data.shells[s];
    const FourierMatrix& block = data.blocks[s];
    const int rows = block.row_band();
    for (std::size_t i = 0; i < shell.points.size(); ++i) {
      const double phi = shell.angles[i];
      for (int k3 = -data.k3_max; k3 <= data.k3_max; ++k3) {
        Complex total{};
        for (int n = -rows; n <= rows; ++n) {
          total += std::polar(1.0, -(n + k3) * phi) * block(n, -k3);
        }
        out.set({shell.points[i].k1, shell.points[i].k2, k3}, total);
      }
    }
  }
  return out;
}

Complex reconstruct(const CosetCoefficients& coeffs, const CosetPoint& point, double lambda_rec) {
  Complex total{};
  for (const auto& [k, c] : coeffs) {
    total += c * basis_eval(k, point);
  }
  return lambda_rec * total;
}

Complex reconstruct_terms(const SpectralData& data, const CosetPoint& point) {
  const PolarElement h = to_polar(point.representative());
  Complex total{};
  for (int k = -data.k3_max; k <= data.k3_max; ++k) {
    total += data.chars[k] * std::polar(1.0, k * h.theta());
  }
  for (std::size_t s = 0; s < data.shells.size(); ++s) {
    const LatticeShell& shell = data.shells[s];
    const FourierMatrix& block = data.blocks[s];
    const int rows = block.row_band();
    for (std::size_t i = 0; i < shell.points.size(); ++i) {
      const double phi_k = shell.angles[i];
      const LatticePoint& pt = shell.points[i];
      const Complex plane =
          std::polar(1.0, kTwoPi * h.a() * (pt.k1 * std::cos(h.phi()) + pt.k2 * std::sin(h.phi())));
      for (int k3 = -data.k3_max; k3 <= data.k3_max; ++k3) {
        Complex inner{};
        for (int n = -rows; n <= rows; ++n) {
          inner += std::polar(1.0, (k3 - n) * phi_k) * block(n, k3);
        }
        total += inner * plane * std::polar(1.0, -k3 * h.theta());
      }
    }
  }
  return total;
}

Complex reconstruct_shells(const SpectralData& data, const CosetPoint& point) {
  const PolarElement h = to_polar(point.representative());
  Complex total{};
  for (int k = -data.k3_max; k <= data.k3_max; ++k) {
    total += data.chars[k] * std::polar(1.0, k * h.theta());
  }
  for (std::size_t s = 0; s < data.shells.size(); ++s) {
    const FourierMatrix& block = data.blocks[s];
    const int rows = block.row_band();
    const int qmax = rows + data.k3_max;
    std::vector<Complex> kernel(2 * static_cast<std::size_t>(qmax) + 1);
    for (int q = -qmax; q <= qmax; ++q) {
      kernel[q + qmax] = shell_kernel(data.shells[s], q, h.a(), h.phi());
    }
    for (int k = -data.k3_max; k <= data.k3_max; ++k) {
      Complex inner{};
      for (int n = -rows; n <= rows; ++n) {
        inner += kernel[k - n + qmax] * block(n, k);
      }
      total += inner * std::polar(1.0, -k * h.theta());
    }
  }
  return total;
}

PlancherelParts plancherel_spectral(const SpectralData& data) {
  PlancherelParts out;
  for (int k = -data.k3_max; k <= data.k3_max; ++k) {
    out.character += std::norm(data.chars[k]);
  }
  for (std::size_t s = 0; s < data.shells.size(); ++s) {
    const FourierMatrix& block = data.blocks[s];
    const int rows = block.row_band();
    for (double theta : data.shells[s].angles) {
      for (int m = -data.k3_max; m <= data.k3_max; ++m) {
        Complex inner{};
        for (int n = -rows; n <= rows; ++n) {
          inner += std::polar(1.0, -n * theta) * block(n, m);
        }
        out.shells += std::norm(inner);
      }
    }
  }
  return out;
}

double plancherel_direct(const CosetFunction& psi, const QuadratureSpec& q, Convention convention) {
  const HaarGrid grid(psi.support, q);
  double total = 0.0;
  for (std::size_t i = 0; i < grid.x.nodes.size(); ++i) {
    for (std::size_t j = 0; j < grid.y.nodes.size(); ++j) {
      for (std::size_t t = 0; t < grid.theta.nodes.size(); ++t) {
        const double theta = grid.theta.nodes[t];
        if (!psi.support.theta.contains(theta)) {
          continue;
        }
        total += grid.weight(i, j, t) *
                 std::norm(psi(CosetPoint(grid.x.nodes[i], grid.y.nodes[j], theta)));
      }
    }
  }
  return convention == Convention::orthonormal ? kTwoPi * total : total;
}

NormalizationAudit audit_normalization(const CosetCoefficients& spectral,
                                       const CosetCoefficients& direct, double threshold) {
  std::vector<Complex> ratios;
  for (const auto& [k, d] : direct) {
    if (std::abs(d) > threshold && spectral.contains(k)) {
      ratios.push_back(spectral.at(k) / d);
    }
  }
  NormalizationAudit a;
  a.used = ratios.size();
  if (ratios.empty()) {
    return a;
  }
  double sum = 0.0;
  for (const Complex& r : ratios) {
    sum += r.real();
  }
  a.lambda = sum / static_cast<double>(ratios.size());
  const double scale = std::abs(a.lambda);
  double var = 0.0;
  for (const Complex& r : ratios) {
    const double dev = std::abs(r - a.lambda);
    var += dev * dev;
    a.max_relative_spread = std::max(a.max_relative_spread, dev / scale);
    a.max_imag = std::max(a.max_imag, std::abs(r.imag()) / scale);
  }
  a.relative_std = std::sqrt(var / static_cast<double>(ratios.size())) / scale;
  return a;
}

}  // namespace se2h
