#pragma once

#include <vector>

namespace se2h {

/// Integer Bessel order; negative orders allowed.
struct BesselOrder {
  int q = 0;
};

inline constexpr int kMaxBesselOrder = 200;
inline constexpr double kMaxBesselArgument = 1.0e4;

/// J_q(x) for |q| <= 200 and |x| <= 1e4. Uses the ascending series for
/// |x| < 12 and normalized Miller recurrence otherwise.
double bessel_j(BesselOrder q, double x);

/// J_q(x) for q = -q_max..q_max, index q + q_max. One downward recurrence
/// covers the whole band; q_max is not capped at kMaxBesselOrder.
std::vector<double> bessel_j_band(int q_max, double x);

/// Same as bessel_j_band but writes into `out` (resized to 2 q_max + 1).
void bessel_j_band(int q_max, double x, std::vector<double>& out);

}  // namespace se2h
