#pragma once

#include <random>

#include "se2h/se2_core.hpp"
#include "se2h/test_functions.hpp"

namespace se2h::testing {

/// Separable poly bump on an arbitrary box.
inline GroupFunction box_bump(const SupportBox& box, int power = 8) {
  return {[box, power](const GroupElement& g) {
            return Complex(poly_bump(g.x1(), box.x.lo, box.x.hi, power) *
                           poly_bump(g.x2(), box.y.lo, box.y.hi, power) *
                           poly_bump(g.theta(), box.theta.lo, box.theta.hi, power));
          },
          box};
}

/// Complex-valued variant: adds a theta phase so nothing is accidentally real.
inline GroupFunction phased_bump(const SupportBox& box, int power = 8) {
  const GroupFunction b = box_bump(box, power);
  return {[b](const GroupElement& g) { return b(g) * std::polar(1.0, 0.7 * g.theta() + g.x1()); },
          box};
}

inline GroupElement random_element(std::mt19937_64& rng, double extent = 2.0) {
  std::uniform_real_distribution<double> u(-extent, extent);
  std::uniform_real_distribution<double> t(0.0, kTwoPi);
  return {u(rng), u(rng), t(rng)};
}

inline double group_distance(const GroupElement& a, const GroupElement& b) {
  return std::max({std::abs(a.x1() - b.x1()), std::abs(a.x2() - b.x2()),
                   angular_distance(a.theta(), b.theta())});
}

}  // namespace se2h::testing
