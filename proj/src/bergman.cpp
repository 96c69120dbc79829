#include "qdot/bergman.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "qdot/mps.hpp"

namespace qdot {

GramPair gram_pair(const BoundaryCurve& curve, int N, int M, bool parallel) {
  if (N < 0 || N > 40) throw std::invalid_argument("degree N out of range (0..40)");
  const QuadratureGrid g = build_grid(curve, M);
  const Measure meas = measure(g);
  GramPair p;
  p.N = N;
  p.z0 = centroid(g, meas.area);
  p.rho = inradius_estimate(g, p.z0);
  GramMatrices gm = parallel ? gram_parallel(g, p.z0, p.rho, N) : gram_serial(g, p.z0, p.rho, N);
  p.A = std::move(gm.A);
  p.B = std::move(gm.B);
  return p;
}

SOmega s_omega(const BoundaryCurve& curve, int N, int M) {
  SOmega r;
  r.N = N;
  r.gram = gram_pair(curve, N, M);
  const Measure meas = measure(curve, M);
  r.area = meas.area;
  r.perimeter = meas.perimeter;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(r.gram.B, r.gram.A);
  if (ges.info() != Eigen::Success) throw std::runtime_error("reduce N or rescale");
  r.S = ges.eigenvalues()(0);
  r.w = ges.eigenvectors().col(0);
  const double wn = std::sqrt(std::real(r.w.dot(r.gram.A * r.w)));
  r.w /= wn;
  const Eigen::VectorXcd res = r.S * (r.gram.A * r.w) - r.gram.B * r.w;
  r.el_residual = res.cwiseAbs().maxCoeff();
  return r;
}

SOmega s_omega_converged(const BoundaryCurve& curve, int N_max, int step, double tol, int M) {
  if (step <= 0 || N_max < step) throw std::invalid_argument("s_omega_converged: bad degree range");
  double prev = s_omega(curve, 0, M).S;
  for (int N = step; N <= N_max; N += step) {
    SOmega s = s_omega(curve, N, M);
    if (std::abs(s.S - prev) < tol) return s;
    prev = s.S;
  }
  throw std::runtime_error("S_Omega not stabilized by N = " + std::to_string(N_max));
}

CarlemanCheck carleman_check(const BoundaryCurve& curve, int N, int M) {
  const SOmega s = s_omega(curve, N, M);
  CarlemanCheck c;
  c.N = N;
  c.S = s.S;
  c.bound = 2.0 * std::sqrt(std::numbers::pi / s.area);
  c.margin = c.S - c.bound;
  return c;
}

double neville_at_zero(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty()) throw std::invalid_argument("neville: size mismatch");
  std::vector<double> p = y;
  const std::size_t n = x.size();
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 0; i + k < n; ++i)
      p[i] = (x[i + k] * p[i] - x[i] * p[i + 1]) / (x[i + k] - x[i]);
  return p[0];
}

SlopeCheck slope_check(const MpsSolver& solver, const std::vector<double>& a_small, int N,
                       int M) {
  if (a_small.empty()) throw std::invalid_argument("slope_check: empty a list");
  SlopeCheck r;
  for (double a : a_small) {
    if (!(a > 0.0) || a > 1e-2) throw std::invalid_argument("slope_check: a values must lie in (0, 1e-2]");
    r.a.push_back(a);
    r.ratio.push_back(solver.mu_first(a).mu / a);
  }
  r.extrapolant = neville_at_zero(r.a, r.ratio);
  r.S = s_omega(solver.curve(), N, M).S;
  r.discrepancy = std::abs(r.extrapolant - r.S) / r.S;
  return r;
}

std::string carleman_to_csv(const std::vector<CarlemanCheck>& rows) {
  std::string s = "N,S,bound,margin\n";
  char line[160];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%d,%.15g,%.15g,%.15g\n", r.N, r.S, r.bound, r.margin);
    s += line;
  }
  return s;
}

}  // namespace qdot
