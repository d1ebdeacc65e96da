#include "se2h/test_functions.hpp"

#include <cmath>

namespace se2h {

namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

double unit_coordinate(double t, double lo, double hi) { return (2.0 * t - (lo + hi)) / (hi - lo); }

// \int_lo^hi of a bump by a high-order Gauss-Legendre rule.
double bump_integral(double (*shape)(double, double, double), double lo, double hi) {
  const Rule1D r = gauss_legendre(200, lo, hi);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    s += r.weights[i] * shape(r.nodes[i], lo, hi);
  }
  return s;
}

double theta_profile(double theta) {
  return 1.0 + 0.5 * std::cos(theta) + 0.25 * std::sin(2.0 * theta);
}

double narrow_shape(double t, double lo, double hi) { return poly_bump(t, lo, hi, 8); }

}  // namespace

double taper_bump(double t, double lo, double hi) {
  const double s = unit_coordinate(t, lo, hi);
  if (std::abs(s) >= 1.0) {
    return 0.0;
  }
  const double u = 1.0 - s * s;
  return std::exp(-2.0 * s * s) * u * u * u;
}

double poly_bump(double t, double lo, double hi, int power) {
  const double s = unit_coordinate(t, lo, hi);
  if (std::abs(s) >= 1.0) {
    return 0.0;
  }
  return std::pow(1.0 - s * s, power);
}

double unit_partition(double x) {
  const double t = 1.0 - std::abs(x);
  if (t <= 0.0) {
    return 0.0;
  }
  return t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

std::vector<TestFunction> builtin_functions() {
  std::vector<TestFunction> out;

  {
    const SupportBox box{{0.2, 0.8}, {0.2, 0.8}, {0.5, 5.5}};
    TestFunction t;
    t.name = "bump";
    t.smoothness = "C2";
    t.description = "separable tapered bump on [0.2,0.8]^2 x [0.5,5.5]";
    t.f = {[](const GroupElement& g) {
             return Complex(taper_bump(g.x1(), 0.2, 0.8) * taper_bump(g.x2(), 0.2, 0.8) *
                            taper_bump(g.theta(), 0.5, 5.5));
           },
           box};
    const double w = bump_integral(taper_bump, 0.2, 0.8);
    t.integral = w * w * bump_integral(taper_bump, 0.5, 5.5) / kFourPiSq;
    out.push_back(std::move(t));
  }
  {
    const SupportBox box{{0.2, 0.8}, {0.2, 0.8}, {0.0, kTwoPi}};
    TestFunction t;
    t.name = "mode";
    t.smoothness = "C2";
    t.description = "tapered bump in (x,y) times exp(2 i theta)";
    t.f = {[](const GroupElement& g) {
             return taper_bump(g.x1(), 0.2, 0.8) * taper_bump(g.x2(), 0.2, 0.8) *
                    std::polar(1.0, kModeFrequency * g.theta());
           },
           box};
    t.integral = Complex{};
    out.push_back(std::move(t));
  }
  {
    const SupportBox box{{-1.0, 1.0}, {-1.0, 1.0}, {0.0, kTwoPi}};
    TestFunction t;
    t.name = "character";
    t.smoothness = "C2";
    t.description = "partition-of-unity bump in (x,y) times 1 + cos(theta)/2 + sin(2 theta)/4";
    t.f = {[](const GroupElement& g) {
             return Complex(unit_partition(g.x1()) * unit_partition(g.x2()) *
                            theta_profile(g.theta()));
           },
           box};
    // Each unit_partition integrates to 1; theta mean of the profile is 1.
    t.integral = Complex(1.0 / kTwoPi);
    t.theta_coefficients = {{-2, {0.0, 0.125}}, {-1, {0.25, 0.0}}, {0, {1.0, 0.0}},
                            {1, {0.25, 0.0}},   {2, {0.0, -0.125}}};
    out.push_back(std::move(t));
  }
  {
    const SupportBox box{{0.25, 0.75}, {0.25, 0.75}, {1.0, 4.0}};
    TestFunction t;
    t.name = "narrow1";
    t.smoothness = "C2";
    t.description = "first factor of the convolution pair";
    t.f = {[](const GroupElement& g) {
             return Complex(taper_bump(g.x1(), 0.25, 0.75) * taper_bump(g.x2(), 0.25, 0.75) *
                            taper_bump(g.theta(), 1.0, 4.0));
           },
           box};
    t.integral = bump_integral(taper_bump, 0.25, 0.75) * bump_integral(taper_bump, 0.25, 0.75) *
                 bump_integral(taper_bump, 1.0, 4.0) / kFourPiSq;
    out.push_back(std::move(t));
  }
  {
    const SupportBox box{{-0.12, 0.12}, {-0.12, 0.12}, {0.25, 0.75}};
    TestFunction t;
    t.name = "narrow2";
    t.smoothness = "C7";
    t.description = "second factor of the convolution pair, near the identity, unit mass";
    const double mass = bump_integral(narrow_shape, -0.12, 0.12) *
                        bump_integral(narrow_shape, -0.12, 0.12) *
                        bump_integral(narrow_shape, 0.25, 0.75) / kFourPiSq;
    t.f = {[mass](const GroupElement& g) {
             return Complex(narrow_shape(g.x1(), -0.12, 0.12) *
                            narrow_shape(g.x2(), -0.12, 0.12) *
                            narrow_shape(g.theta(), 0.25, 0.75) / mass);
           },
           box};
    t.integral = Complex(1.0);
    out.push_back(std::move(t));
  }
  return out;
}

TestFunction builtin(const std::string& name) {
  for (auto& t : builtin_functions()) {
    if (t.name == name) {
      return t;
    }
  }
  throw InvalidArgument("unknown test function '" + name + "'");
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& t : builtin_functions()) {
    names.push_back(t.name);
  }
  return names;
}

}  // namespace se2h
