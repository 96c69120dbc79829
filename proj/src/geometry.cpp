#include "qdot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace qdot {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

}  // namespace

BoundaryCurve BoundaryCurve::disk(double radius, cplx center) {
  if (!(radius > 0.0)) throw std::invalid_argument("invalid curve: radius must be positive");
  BoundaryCurve c;
  c.kind_ = CurveKind::disk;
  c.radius_ = radius;
  c.center_ = center;
  return c;
}

BoundaryCurve BoundaryCurve::ellipse(double semi_major, double semi_minor,
                                     cplx center) {
  if (!(semi_major > 0.0) || !(semi_minor > 0.0))
    throw std::invalid_argument("invalid curve: semi-axes must be positive");
  BoundaryCurve c;
  c.kind_ = CurveKind::ellipse;
  c.semi_major_ = semi_major;
  c.semi_minor_ = semi_minor;
  c.center_ = center;
  return c;
}

BoundaryCurve BoundaryCurve::radial_fourier(double c0, std::vector<double> cos_k,
                                            std::vector<double> sin_k,
                                            cplx center) {
  if (!(c0 > 0.0)) throw std::invalid_argument("invalid curve: c0 must be positive");
  const std::size_t n = std::max(cos_k.size(), sin_k.size());
  cos_k.resize(n, 0.0);
  sin_k.resize(n, 0.0);
  BoundaryCurve c;
  c.kind_ = CurveKind::radial_fourier;
  c.c0_ = c0;
  c.cos_k_ = std::move(cos_k);
  c.sin_k_ = std::move(sin_k);
  c.center_ = center;
  return c;
}

void BoundaryCurve::radial(double t, double& r, double& dr, double& ddr) const {
  if (kind_ == CurveKind::disk) {
    r = radius_;
    dr = ddr = 0.0;
    return;
  }
  r = c0_;
  dr = ddr = 0.0;
  for (std::size_t i = 0; i < cos_k_.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    const double ck = std::cos(k * t), sk = std::sin(k * t);
    r += cos_k_[i] * ck + sin_k_[i] * sk;
    dr += k * (-cos_k_[i] * sk + sin_k_[i] * ck);
    ddr += -k * k * (cos_k_[i] * ck + sin_k_[i] * sk);
  }
}

cplx BoundaryCurve::point(double t) const {
  if (kind_ == CurveKind::ellipse)
    return center_ + cplx(semi_major_ * std::cos(t), semi_minor_ * std::sin(t));
  double r, dr, ddr;
  radial(t, r, dr, ddr);
  return center_ + r * std::polar(1.0, t);
}

cplx BoundaryCurve::d1(double t) const {
  if (kind_ == CurveKind::ellipse)
    return {-semi_major_ * std::sin(t), semi_minor_ * std::cos(t)};
  double r, dr, ddr;
  radial(t, r, dr, ddr);
  return (dr + kI * r) * std::polar(1.0, t);
}

cplx BoundaryCurve::d2(double t) const {
  if (kind_ == CurveKind::ellipse)
    return {-semi_major_ * std::cos(t), -semi_minor_ * std::sin(t)};
  double r, dr, ddr;
  radial(t, r, dr, ddr);
  return (ddr - r + 2.0 * kI * dr) * std::polar(1.0, t);
}

BoundaryCurve BoundaryCurve::scaled(double factor) const {
  BoundaryCurve c = *this;
  c.radius_ *= factor;
  c.semi_major_ *= factor;
  c.semi_minor_ *= factor;
  c.c0_ *= factor;
  for (double& v : c.cos_k_) v *= factor;
  for (double& v : c.sin_k_) v *= factor;
  return c;
}

QuadratureGrid build_grid(const BoundaryCurve& curve, int nodes) {
  if (nodes < 16 || nodes % 2 != 0)
    throw std::invalid_argument("build_grid: node count must be even and >= 16");
  QuadratureGrid g;
  g.size = nodes;
  g.t.resize(nodes);
  g.z.resize(nodes);
  g.tangent.resize(nodes);
  g.normal.resize(nodes);
  g.weight.resize(nodes);
  g.curvature.resize(nodes);
  g.dz.resize(nodes);
  const double h = kTwoPi / nodes;
  const bool radial = curve.kind() != CurveKind::ellipse;
  for (int j = 0; j < nodes; ++j) {
    const double t = h * j;
    if (radial) {
      const cplx rel = curve.point(t) - curve.center();
      if (!(std::abs(rel) > 0.0) || std::real(rel * std::polar(1.0, -t)) <= 0.0)
        throw std::invalid_argument("invalid curve: non-positive radial function");
    }
    const cplx z1 = curve.d1(t);
    const cplx z2 = curve.d2(t);
    const double speed = std::abs(z1);
    g.t[j] = t;
    g.z[j] = curve.point(t);
    g.tangent[j] = z1 / speed;
    g.normal[j] = -kI * g.tangent[j];
    g.weight[j] = speed * h;
    g.curvature[j] = std::imag(std::conj(z1) * z2) / (speed * speed * speed);
    g.dz[j] = z1 * h;
  }
  return g;
}

Measure measure(const QuadratureGrid& grid) {
  Measure m;
  for (int j = 0; j < grid.size; ++j) {
    m.area += std::imag(std::conj(grid.z[j]) * grid.dz[j]);
    m.perimeter += grid.weight[j];
  }
  m.area *= 0.5;
  return m;
}

Measure measure(const BoundaryCurve& curve, int nodes) {
  return measure(build_grid(curve, nodes));
}

cplx centroid(const QuadratureGrid& grid, double area) {
  cplx acc{};
  for (int j = 0; j < grid.size; ++j) acc += std::norm(grid.z[j]) * grid.dz[j];
  return acc / (2.0 * kI) / area;
}

double inradius_estimate(const QuadratureGrid& grid, cplx z0) {
  double r = std::abs(grid.z[0] - z0);
  for (int j = 1; j < grid.size; ++j) r = std::min(r, std::abs(grid.z[j] - z0));
  return r;
}

double domain_integral(const BoundaryCurve& curve, const std::function<double(cplx)>& f,
                       int nodes) {
  using rule = boost::math::quadrature::gauss<double, 30>;
  const QuadratureGrid g = build_grid(curve, nodes);
  const cplx zc = curve.center();
  // Rule nodes are stored for x >= 0 only; expand to the full symmetric set.
  std::vector<double> s, w;
  for (std::size_t q = 0; q < rule::abscissa().size(); ++q) {
    const double x = rule::abscissa()[q], wq = rule::weights()[q];
    s.push_back(0.5 * (1.0 + x));
    w.push_back(0.5 * wq);
    if (x != 0.0) {
      s.push_back(0.5 * (1.0 - x));
      w.push_back(0.5 * wq);
    }
  }
  double total = 0.0;
  for (int j = 0; j < g.size; ++j) {
    const cplx d = g.z[j] - zc;
    const double jac = std::imag(std::conj(d) * g.dz[j]);
    double line = 0.0;
    for (std::size_t q = 0; q < s.size(); ++q) line += w[q] * s[q] * f(zc + s[q] * d);
    total += jac * line;
  }
  return total;
}

BoundaryCurve normalize_area(const BoundaryCurve& curve, double target_area,
                             int nodes) {
  if (!(target_area > 0.0))
    throw std::invalid_argument("normalize_area: target area must be positive");
  const double area = measure(curve, nodes).area;
  const double factor = std::sqrt(target_area / area);
  if (std::abs(factor - 1.0) < 1e-15) return curve;
  return curve.scaled(factor);
}

}  // namespace qdot
