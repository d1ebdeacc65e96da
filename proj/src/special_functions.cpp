#include "se2h/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "se2h/se2_core.hpp"

namespace se2h {

namespace {

constexpr double kSeriesLimit = 12.0;
constexpr long double kRescaleAbove = 1.0e1000L;
constexpr long double kRescaleBy = 1.0e-1000L;

// Ascending series in extended precision; the alternating terms reach
// I_q(x) in magnitude, so long double keeps the result near full double
// accuracy up to |x| = 12.
double series_j(int q, double xd) {
  const long double half = static_cast<long double>(xd) / 2.0L;
  long double term = 1.0L;
  for (int k = 1; k <= q; ++k) {
    term *= half / k;
  }
  if (term == 0.0L) {
    return 0.0;
  }
  const long double h2 = half * half;
  long double sum = term;
  for (int k = 0; k < 500; ++k) {
    term *= -h2 / (static_cast<long double>(k + 1) * (k + 1 + q));
    sum += term;
    if (std::fabs(term) < 1.0e-24L * std::fabs(sum) && k > 2) {
      break;
    }
  }
  return static_cast<double>(sum);
}

int miller_start(int q_max, double x) {
  const double top = std::max(static_cast<double>(q_max), x);
  int m = static_cast<int>(top) + 24 + static_cast<int>(std::ceil(16.0 * std::cbrt(std::max(x, 1.0)))) +
          static_cast<int>(std::ceil(std::sqrt(40.0 * std::max(q_max, 1))));
  return m + (m % 2);
}

// Normalized downward recurrence for x > 0; fills out[0..q_max] with
// J_0..J_{q_max}.
void miller_nonnegative(int q_max, double xd, std::vector<long double>& out) {
  const long double x = xd;
  const int m = miller_start(q_max, xd);
  out.assign(static_cast<std::size_t>(q_max) + 1, 0.0L);
  long double next = 0.0L;  // J_{k+1}
  long double cur = 1.0e-30L;  // J_k, k = m
  long double norm = 0.0L;
  for (int k = m; k >= 1; --k) {
    if (k <= q_max) {
      out[k] = cur;
    }
    if (k % 2 == 0) {
      norm += 2.0L * cur;
    }
    const long double prev = (2.0L * k / x) * cur - next;
    next = cur;
    cur = prev;
    if (std::fabs(cur) > kRescaleAbove) {
      cur *= kRescaleBy;
      next *= kRescaleBy;
      norm *= kRescaleBy;
      for (int i = k; i <= q_max; ++i) {
        out[i] *= kRescaleBy;
      }
    }
  }
  out[0] = cur;
  norm += cur;
  for (auto& v : out) {
    v /= norm;
  }
}

void check_argument(double x) {
  if (!std::isfinite(x) || std::abs(x) > kMaxBesselArgument) {
    throw InvalidArgument("bessel_j: argument outside supported range |x| <= 1e4");
  }
}

double sign_for(int q) { return (q % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

double bessel_j(BesselOrder order, double x) {
  check_argument(x);
  if (std::abs(order.q) > kMaxBesselOrder) {
    throw InvalidArgument("bessel_j: order outside supported range |q| <= 200");
  }
  const int q = std::abs(order.q);
  // J_{-q} = (-1)^q J_q and J_q(-x) = (-1)^q J_q(x).
  double sign = 1.0;
  if (order.q < 0) {
    sign *= sign_for(q);
  }
  if (x < 0.0) {
    sign *= sign_for(q);
    x = -x;
  }
  if (x == 0.0) {
    return q == 0 ? 1.0 : 0.0;
  }
  if (x < kSeriesLimit) {
    return sign * series_j(q, x);
  }
  std::vector<long double> values;
  miller_nonnegative(q, x, values);
  return sign * static_cast<double>(values[q]);
}

void bessel_j_band(int q_max, double x, std::vector<double>& out) {
  check_argument(x);
  if (q_max < 0) {
    throw InvalidArgument("bessel_j_band: q_max must be >= 0");
  }
  const std::size_t width = 2 * static_cast<std::size_t>(q_max) + 1;
  out.assign(width, 0.0);
  if (x == 0.0) {
    out[q_max] = 1.0;
    return;
  }
  const bool flip = x < 0.0;
  std::vector<long double> values;
  miller_nonnegative(q_max, std::abs(x), values);
  for (int q = 0; q <= q_max; ++q) {
    const double v = static_cast<double>(values[q]) * (flip ? sign_for(q) : 1.0);
    out[q_max + q] = v;
    out[q_max - q] = sign_for(q) * v;
  }
}

std::vector<double> bessel_j_band(int q_max, double x) {
  std::vector<double> out;
  bessel_j_band(q_max, x, out);
  return out;
}

}  // namespace se2h
