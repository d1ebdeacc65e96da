#include "se2h/se2_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace se2h {

namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

// Reference Gauss-Legendre nodes on [-1, 1], computed once per order.
struct ReferenceRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

ReferenceRule compute_reference_rule(int n) {
  ReferenceRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) {
        break;
      }
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

const ReferenceRule& reference_rule(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<ReferenceRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<ReferenceRule>(compute_reference_rule(n));
  }
  return *slot;
}

Rule1D make_rule(AxisScheme scheme, int n, double lo, double hi, bool periodic_full) {
  if (scheme == AxisScheme::trapezoid) {
    if (periodic_full) {
      return trapezoid_periodic(n, 0.0, kTwoPi);
    }
    return trapezoid_periodic(n, lo, hi - lo);
  }
  return gauss_legendre(n, lo, hi);
}

}  // namespace

double wrap_angle(double angle) {
  double r = angle - kTwoPi * std::floor(angle / kTwoPi);
  if (r >= kTwoPi || r < 0.0) {
    r = 0.0;
  }
  return r;
}

double angular_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, kTwoPi - d);
}

GroupElement::GroupElement(double x1, double x2, double theta)
    : x1_(x1), x2_(x2), theta_(wrap_angle(theta)) {}

GroupElement GroupElement::translation(int k1, int k2) {
  return {static_cast<double>(k1), static_cast<double>(k2), 0.0};
}

PolarElement::PolarElement(double a, double phi, double theta)
    : a_(a), phi_(a == 0.0 ? 0.0 : wrap_angle(phi)), theta_(wrap_angle(theta)) {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw InvalidArgument("PolarElement: radius must be finite and >= 0");
  }
}

CosetPoint::CosetPoint(double x, double y, double theta) : x_(x), y_(y), theta_(theta) {
  if (!(x >= 0.0 && x < 1.0) || !(y >= 0.0 && y < 1.0) || !(theta >= 0.0 && theta < kTwoPi)) {
    throw InvalidArgument("CosetPoint: components outside [0,1)^2 x [0,2pi)");
  }
}

void SupportBox::validate() const {
  for (const Interval* iv : {&x, &y, &theta}) {
    if (!std::isfinite(iv->lo) || !std::isfinite(iv->hi)) {
      throw InvalidArgument("SupportBox: unbounded support");
    }
    if (!(iv->hi > iv->lo)) {
      throw InvalidArgument("SupportBox: empty interval");
    }
  }
  if (theta.lo < 0.0 || theta.hi > kTwoPi) {
    throw InvalidArgument("SupportBox: theta range must lie in [0, 2pi]");
  }
}

bool SupportBox::contains(const GroupElement& g) const {
  return x.contains(g.x1()) && y.contains(g.x2()) && theta.contains(g.theta());
}

double SupportBox::max_radius() const {
  const double mx = std::max(std::abs(x.lo), std::abs(x.hi));
  const double my = std::max(std::abs(y.lo), std::abs(y.hi));
  return std::hypot(mx, my);
}

SupportBox fundamental_domain() { return {{0.0, 1.0}, {0.0, 1.0}, {0.0, kTwoPi}}; }

QuadratureSpec QuadratureSpec::uniform(int n) {
  QuadratureSpec q;
  q.n_x = q.n_y = q.n_theta = q.n_phi = n;
  return q;
}

void QuadratureSpec::validate() const {
  if (n_x < 2 || n_y < 2 || n_theta < 2 || n_phi < 2) {
    throw InvalidArgument("QuadratureSpec: every node count must be >= 2");
  }
}

Rule1D gauss_legendre(int n, double lo, double hi) {
  if (n < 1) {
    throw InvalidArgument("gauss_legendre: n must be positive");
  }
  const ReferenceRule& ref = reference_rule(n);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = mid + half * ref.nodes[i];
    r.weights[i] = half * ref.weights[i];
  }
  return r;
}

Rule1D trapezoid_periodic(int n, double lo, double period) {
  if (n < 1) {
    throw InvalidArgument("trapezoid_periodic: n must be positive");
  }
  Rule1D r;
  r.nodes.resize(n);
  r.weights.assign(n, period / n);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = lo + period * i / n;
  }
  return r;
}

HaarGrid::HaarGrid(const SupportBox& box, const QuadratureSpec& q) {
  q.validate();
  box.validate();
  x = make_rule(q.x_scheme, q.n_x, box.x.lo, box.x.hi, false);
  y = make_rule(q.y_scheme, q.n_y, box.y.lo, box.y.hi, false);
  // The equal-weight rule always runs over the whole circle; the integrand
  // vanishes outside the window.
  theta = make_rule(q.theta_scheme, q.n_theta, box.theta.lo, box.theta.hi, true);
}

double HaarGrid::weight(std::size_t i, std::size_t j, std::size_t k) const {
  return x.weights[i] * y.weights[j] * theta.weights[k] / kFourPiSq;
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  const double c = std::cos(g.theta());
  const double s = std::sin(g.theta());
  return {g.x1() + c * h.x1() - s * h.x2(), g.x2() + s * h.x1() + c * h.x2(),
          g.theta() + h.theta()};
}

GroupElement inverse(const GroupElement& g) {
  const double c = std::cos(g.theta());
  const double s = std::sin(g.theta());
  return {-(c * g.x1() + s * g.x2()), -(-s * g.x1() + c * g.x2()), -g.theta()};
}

PolarElement to_polar(const GroupElement& g) {
  const double a = std::hypot(g.x1(), g.x2());
  return {a, a == 0.0 ? 0.0 : std::atan2(g.x2(), g.x1()), g.theta()};
}

GroupElement from_polar(const PolarElement& p) {
  return {p.a() * std::cos(p.phi()), p.a() * std::sin(p.phi()), p.theta()};
}

CosetPoint coset_project(const GroupElement& g) {
  auto unit = [](double v) {
    double r = v - std::floor(v);
    return (r >= 1.0 || r < 0.0) ? 0.0 : r;
  };
  return {unit(g.x1()), unit(g.x2()), wrap_angle(g.theta())};
}

Complex integrate_haar(const std::function<Complex(const GroupElement&)>& f,
                       const SupportBox& box, const QuadratureSpec& q) {
  const HaarGrid grid(box, q);
  Complex total{0.0, 0.0};
  for (std::size_t i = 0; i < grid.x.nodes.size(); ++i) {
    for (std::size_t j = 0; j < grid.y.nodes.size(); ++j) {
      Complex row{0.0, 0.0};
      for (std::size_t k = 0; k < grid.theta.nodes.size(); ++k) {
        const double t = grid.theta.nodes[k];
        if (!box.theta.contains(t)) {
          continue;
        }
        row += grid.theta.weights[k] * f({grid.x.nodes[i], grid.y.nodes[j], t});
      }
      total += grid.x.weights[i] * grid.y.weights[j] * row;
    }
  }
  return total / kFourPiSq;
}

Complex integrate_coset_weil(const std::function<Complex(const CosetPoint&)>& psi,
                             const QuadratureSpec& q) {
  const HaarGrid grid(fundamental_domain(), q);
  Complex total{0.0, 0.0};
  for (std::size_t i = 0; i < grid.x.nodes.size(); ++i) {
    for (std::size_t j = 0; j < grid.y.nodes.size(); ++j) {
      for (std::size_t k = 0; k < grid.theta.nodes.size(); ++k) {
        total += grid.weight(i, j, k) *
                 psi(CosetPoint(grid.x.nodes[i], grid.y.nodes[j], grid.theta.nodes[k]));
      }
    }
  }
  return total;
}

std::vector<GroupElement> contributing_translations(const SupportBox& box,
                                                    const GroupElement& g) {
  box.validate();
  // gamma o g translates g by gamma; gamma + x(g) must land in the box.
  const int k1_lo = static_cast<int>(std::ceil(box.x.lo - g.x1()));
  const int k1_hi = static_cast<int>(std::floor(box.x.hi - g.x1()));
  const int k2_lo = static_cast<int>(std::ceil(box.y.lo - g.x2()));
  const int k2_hi = static_cast<int>(std::floor(box.y.hi - g.x2()));
  std::vector<GroupElement> out;
  for (int k1 = k1_lo; k1 <= k1_hi; ++k1) {
    for (int k2 = k2_lo; k2 <= k2_hi; ++k2) {
      out.push_back(GroupElement::translation(k1, k2));
    }
  }
  return out;
}

Complex periodize(const GroupFunction& f, const GroupElement& g) {
  Complex total{0.0, 0.0};
  for (const GroupElement& gamma : contributing_translations(f.box, g)) {
    total += f(compose(gamma, g));
  }
  return total;
}

}  // namespace se2h
