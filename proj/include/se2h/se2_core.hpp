#pragma once

// Group arithmetic on SE(2), coordinate conversions, Haar and coset
// integration, fundamental-domain projection and Z^2-periodization.

#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace se2h {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle into [0, 2pi).
double wrap_angle(double angle);

/// Circular distance between two angles, in [0, pi].
double angular_distance(double a, double b);

/// Raised when an argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a truncated sum or integral has not decayed below its
/// configured tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point g(x1, x2, theta) of SE(2). Theta is always stored in [0, 2pi).
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(double x1, double x2, double theta);

  static GroupElement identity() { return {}; }
  /// The pure lattice translation (k1, k2, 0).
  static GroupElement translation(int k1, int k2);

  double x1() const { return x1_; }
  double x2() const { return x2_; }
  double theta() const { return theta_; }

 private:
  double x1_ = 0.0;
  double x2_ = 0.0;
  double theta_ = 0.0;
};

/// g(a, phi, theta): translation in polar coordinates. phi is 0 when a == 0.
class PolarElement {
 public:
  PolarElement() = default;
  PolarElement(double a, double phi, double theta);

  double a() const { return a_; }
  double phi() const { return phi_; }
  double theta() const { return theta_; }

 private:
  double a_ = 0.0;
  double phi_ = 0.0;
  double theta_ = 0.0;
};

/// Representative of a right coset Z^2 g inside Omega = [0,1)^2 x [0,2pi).
class CosetPoint {
 public:
  CosetPoint() = default;
  /// Throws InvalidArgument when a component is outside its half-open range.
  CosetPoint(double x, double y, double theta);

  double x() const { return x_; }
  double y() const { return y_; }
  double theta() const { return theta_; }

  GroupElement representative() const { return {x_, y_, theta_}; }

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double theta_ = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double v) const { return v >= lo && v <= hi; }
};

/// Compact support of a group function. The theta interval lies inside
/// [0, 2pi]; the full circle is [0, 2pi].
struct SupportBox {
  Interval x;
  Interval y;
  Interval theta{0.0, kTwoPi};

  void validate() const;
  bool contains(const GroupElement& g) const;
  bool full_circle() const { return theta.lo <= 0.0 && theta.hi >= kTwoPi; }
  /// Largest translation radius over the box.
  double max_radius() const;
};

/// The fundamental domain Omega as a support box.
SupportBox fundamental_domain();

enum class AxisScheme { gauss_legendre, trapezoid };

/// Tensor-product quadrature configuration. Translation axes use
/// Gauss-Legendre; periodic axes default to the equal-weight rule.
struct QuadratureSpec {
  int n_x = 64;
  int n_y = 64;
  int n_theta = 64;
  int n_phi = 64;
  AxisScheme x_scheme = AxisScheme::gauss_legendre;
  AxisScheme y_scheme = AxisScheme::gauss_legendre;
  AxisScheme theta_scheme = AxisScheme::trapezoid;

  static QuadratureSpec uniform(int n);
  void validate() const;
};

/// A compactly supported complex function on SE(2).
struct GroupFunction {
  std::function<Complex(const GroupElement&)> eval;
  SupportBox box;

  Complex operator()(const GroupElement& g) const { return eval(g); }
};

/// One-dimensional rule with nodes and weights.
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes on [lo, hi].
Rule1D gauss_legendre(int n, double lo, double hi);

/// Equal-weight rule with n nodes on the periodic interval [lo, lo + period).
Rule1D trapezoid_periodic(int n, double lo, double period);

/// Tensor grid over a support box with the Haar weight (4 pi^2)^{-1}
/// folded into `weight`.
struct HaarGrid {
  Rule1D x;
  Rule1D y;
  Rule1D theta;

  HaarGrid(const SupportBox& box, const QuadratureSpec& q);
  double weight(std::size_t i, std::size_t j, std::size_t k) const;
  std::size_t size() const { return x.nodes.size() * y.nodes.size() * theta.nodes.size(); }
};

GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);

PolarElement to_polar(const GroupElement& g);
GroupElement from_polar(const PolarElement& p);

/// Reduces (x1, x2) mod 1 and theta mod 2pi.
CosetPoint coset_project(const GroupElement& g);

/// Approximates the Haar integral (4 pi^2)^{-1} \int f dx1 dx2 dtheta over the
/// box; f must vanish outside it.
Complex integrate_haar(const std::function<Complex(const GroupElement&)>& f,
                       const SupportBox& box, const QuadratureSpec& q);

/// Integral of a coset function over Omega with weight (4 pi^2)^{-1}.
Complex integrate_coset_weil(const std::function<Complex(const CosetPoint&)>& psi,
                             const QuadratureSpec& q);

/// Lattice vectors gamma such that gamma o g can meet the support box.
std::vector<GroupElement> contributing_translations(const SupportBox& box,
                                                    const GroupElement& g);

/// f~(Gamma g) = sum over gamma in Z^2 of f(gamma o g); exact finite sum.
Complex periodize(const GroupFunction& f, const GroupElement& g);

}  // namespace se2h
