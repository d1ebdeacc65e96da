#include "se2h/irreps.hpp"

#include <cmath>

#include "se2h/special_functions.hpp"

namespace se2h {

RadialFrequency::RadialFrequency(double p) : p_(p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw InvalidArgument("RadialFrequency: p must be finite and > 0");
  }
}

CircleVector::CircleVector(int band) : band_(band) {
  if (band < 0) {
    throw InvalidArgument("CircleVector: band must be >= 0");
  }
  c_.assign(2 * static_cast<std::size_t>(band) + 1, Complex{});
}

CircleVector CircleVector::basis(int band, int k) {
  CircleVector v(band);
  v[k] = 1.0;
  return v;
}

Complex i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

Complex matrix_element(int m, int n, const PolarElement& g, RadialFrequency p) {
  const int q = m - n;
  if (g.a() == 0.0) {
    return q == 0 ? std::polar(1.0, -m * g.theta()) : Complex{};
  }
  const double j = bessel_j_band(std::abs(q), p.value() * g.a())[std::abs(q) + q];
  return i_pow(q) * std::polar(1.0, -(m * g.theta() + (n - m) * g.phi())) * j;
}

Complex matrix_element(int m, int n, const GroupElement& g, RadialFrequency p) {
  return matrix_element(m, n, to_polar(g), p);
}

Complex matrix_element_oracle(int m, int n, const GroupElement& g, RadialFrequency p, int nodes,
                              ActionSign sign) {
  if (nodes < 64) {
    throw InvalidArgument("matrix_element_oracle: at least 64 nodes required");
  }
  const double s = static_cast<double>(static_cast<int>(sign));
  Complex total{};
  for (int j = 0; j < nodes; ++j) {
    const double alpha = kTwoPi * j / nodes;
    const double ut = std::cos(alpha) * g.x1() + std::sin(alpha) * g.x2();
    // [U_p(g) e_m](u_alpha) conj(e_n(u_alpha)); e_m(R^T u_alpha) = e^{i m (alpha - theta)}.
    total += std::polar(1.0, s * p.value() * ut + m * (alpha - g.theta()) - n * alpha);
  }
  return total / static_cast<double>(nodes);
}

Complex character(int n, const GroupElement& g) { return std::polar(1.0, n * g.theta()); }

CircleVector apply_irrep(const GroupElement& g, RadialFrequency p, const CircleVector& v) {
  const int band = v.band();
  const PolarElement pg = to_polar(g);
  const std::vector<double> j = bessel_j_band(2 * band, p.value() * pg.a());
  CircleVector out(band);
  for (int n = -band; n <= band; ++n) {
    Complex acc{};
    for (int m = -band; m <= band; ++m) {
      if (v[m] == Complex{}) {
        continue;
      }
      const int q = m - n;
      acc += v[m] * i_pow(q) * std::polar(1.0, -(m * pg.theta() + (n - m) * pg.phi())) *
             j[q + 2 * band];
    }
    out[n] = acc;
  }
  return out;
}

int margin_band(int n_eff, double p, double a_max) {
  return n_eff + static_cast<int>(std::ceil(p * a_max)) + 20;
}

}  // namespace se2h
