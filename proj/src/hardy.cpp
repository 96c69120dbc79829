#include "qdot/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace qdot {

namespace {

constexpr int kMaxDegree = 10000;

void check_degree(int N) {
  if (N < 0 || N > kMaxDegree) throw std::invalid_argument("series degree out of range (0..10^4)");
}

}  // namespace

cplx TaylorSeries::operator()(cplx z) const {
  cplx acc{};
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
  return acc;
}

TaylorSeries TaylorSeries::polynomial(std::vector<cplx> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  check_degree(static_cast<int>(coeffs.size()) - 1);
  TaylorSeries f;
  f.a = std::move(coeffs);
  return f;
}

TaylorSeries TaylorSeries::geometric(cplx c1, cplx c2, int N) {
  check_degree(N);
  const double q = std::abs(c2);
  if (!(q < 1.0)) throw std::invalid_argument("geometric series needs |c2| < 1");
  TaylorSeries f;
  f.a.resize(N + 1);
  cplx p = c1;
  for (int n = 0; n <= N; ++n) {
    f.a[n] = p;
    p *= c2;
  }
  // sum_{n>N} |c1|^2 q^{2n} = |c1|^2 q^{2(N+1)} / (1 - q^2)
  f.tail = std::abs(c1) * std::pow(q, N + 1) / std::sqrt(1.0 - q * q);
  return f;
}

std::vector<cplx> cauchy_product(const std::vector<cplx>& f, const std::vector<cplx>& g, int N) {
  std::vector<cplx> h(N + 1);
  const int nf = static_cast<int>(f.size()), ng = static_cast<int>(g.size());
  for (int i = 0; i < nf && i <= N; ++i) {
    if (f[i] == cplx{}) continue;
    for (int j = 0; j < ng && i + j <= N; ++j) h[i + j] += f[i] * g[j];
  }
  return h;
}

Norms norms(const TaylorSeries& f) {
  check_degree(f.degree());
  Norms r;
  double h2 = 0.0, a2 = 0.0;
  for (std::size_t n = 0; n < f.a.size(); ++n) {
    const double v = std::norm(f.a[n]);
    h2 += v;
    a2 += v / static_cast<double>(n + 1);
  }
  const int N = f.degree();
  const std::vector<cplx> sq = cauchy_product(f.a, f.a, 2 * N);
  double a4 = 0.0;
  for (std::size_t n = 0; n < sq.size(); ++n) a4 += std::norm(sq[n]) / static_cast<double>(n + 1);
  r.H2 = std::sqrt(h2);
  r.A2 = std::sqrt(a2);
  r.A4 = std::sqrt(std::sqrt(a4));
  r.tail = f.tail;
  return r;
}

double vukotic_gap(const TaylorSeries& f) {
  const Norms n = norms(f);
  return n.H2 - n.A4;
}

double m2_series(const TaylorSeries& f, double r) {
  double s = 0.0, rn = 1.0;
  for (const cplx& c : f.a) {
    s += std::norm(c) * rn;
    rn *= r * r;
  }
  return std::sqrt(s);
}

double m2_quadrature(const TaylorSeries& f, double r, int nodes) {
  if (nodes < 1) throw std::invalid_argument("m2_quadrature: nodes must be positive");
  double s = 0.0;
  for (int j = 0; j < nodes; ++j) s += std::norm(f(std::polar(r, 2.0 * std::numbers::pi * j / nodes)));
  return std::sqrt(s / nodes);
}

MobiusMap::MobiusMap(cplx c2_, cplx c4_, cplx c5_) : c2(c2_), c4(c4_), c5(c5_) {
  if (!(std::abs(c2) < 1.0)) throw std::invalid_argument("invalid map: requires |c2| < 1");
  if (c4 == cplx{}) throw std::invalid_argument("invalid map: c4 must be nonzero");
}

cplx MobiusMap::operator()(cplx z) const { return c4 * z / (1.0 - c2 * z) + c5; }

cplx MobiusMap::derivative(cplx z) const {
  const cplx d = 1.0 - c2 * z;
  return c4 / (d * d);
}

namespace {

// Coefficients of u(F(z)) (F')^{1/2} up to degree N, given the coefficients
// of F and of 1/(1 - c2 z) (possibly replaced by majorants).
std::vector<cplx> compose(const std::vector<cplx>& u, const std::vector<cplx>& F,
                          const std::vector<cplx>& geo, cplx root_c4, int N) {
  std::vector<cplx> acc(N + 1), power(N + 1);
  power[0] = 1.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (k > 0) power = cauchy_product(power, F, N);
    for (int n = 0; n <= N; ++n) acc[n] += u[k] * power[n];
  }
  std::vector<cplx> f = cauchy_product(acc, geo, N);
  for (cplx& c : f) c *= root_c4;
  return f;
}

}  // namespace

PullbackResult pullback_identity(const std::vector<cplx>& u, const MobiusMap& map, int N,
                                 int nodes) {
  check_degree(N);
  if (!(std::abs(map.c2) < 1.0)) throw std::invalid_argument("invalid map: requires |c2| < 1");
  if (nodes < 8) throw std::invalid_argument("pullback_identity: too few nodes");
  const std::vector<cplx> uu = u.empty() ? std::vector<cplx>{0.0} : u;

  std::vector<cplx> F(N + 1), geo(N + 1), Fm(N + 1), geom(N + 1);
  const double q = std::abs(map.c2);
  F[0] = map.c5;
  Fm[0] = std::abs(map.c5);
  cplx p = 1.0;
  double pm = 1.0;
  for (int n = 0; n <= N; ++n) {
    geo[n] = p;
    geom[n] = pm;
    if (n >= 1) {
      F[n] = map.c4 * geo[n - 1];
      Fm[n] = std::abs(map.c4) * geom[n - 1].real();
    }
    p *= map.c2;
    pm *= q;
  }
  const cplx root_c4 = std::sqrt(map.c4);
  PullbackResult r;
  r.f = TaylorSeries::polynomial(compose(uu, F, geo, root_c4, N));

  // Majorant: coefficients of f are dominated by those of
  // g(t) = sum |u_k| Fm(t)^k sqrt|c4| / (1 - |c2| t); the tail sum is g(1) minus
  // the computed partial sum.
  std::vector<cplx> um(uu.size());
  for (std::size_t k = 0; k < uu.size(); ++k) um[k] = std::abs(uu[k]);
  const std::vector<cplx> gm = compose(um, Fm, geom, std::sqrt(std::abs(map.c4)), N);
  double partial = 0.0;
  for (const cplx& c : gm) partial += c.real();
  const double F1 = std::abs(map.c5) + std::abs(map.c4) / (1.0 - q);
  double g1 = 0.0, fk = 1.0;
  for (const cplx& c : um) {
    g1 += c.real() * fk;
    fk *= F1;
  }
  g1 *= std::sqrt(std::abs(map.c4)) / (1.0 - q);
  const double tail_coeff = std::max(0.0, g1 - partial) + 4e-16 * g1;
  r.f.tail = q == 0.0 && static_cast<int>(uu.size()) <= N + 1 ? 0.0 : tail_coeff;

  r.lhs = std::sqrt(2.0 * std::numbers::pi) * norms(r.f).H2;
  double s = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * j / nodes);
    const cplx w = map(z);
    cplx uw{};
    for (auto it = uu.rbegin(); it != uu.rend(); ++it) uw = uw * w + *it;
    s += std::norm(uw) * std::abs(map.derivative(z));
  }
  r.rhs = std::sqrt(s * 2.0 * std::numbers::pi / nodes);
  r.defect = std::abs(r.lhs - r.rhs);
  r.tail = std::sqrt(2.0 * std::numbers::pi) * r.f.tail;
  return r;
}

std::string hardy_to_csv(const std::vector<HardyRow>& rows) {
  std::string s = "case,H2,A2,A4,gap\n";
  char line[256];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%s,%.15g,%.15g,%.15g,%.15g\n", r.name.c_str(), r.n.H2,
                  r.n.A2, r.n.A4, r.gap);
    s += line;
  }
  return s;
}

}  // namespace qdot
