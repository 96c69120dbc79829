#include "qdot/param_map.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qdot/roots.hpp"

namespace qdot {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

TransferResult invert_monotone(const MonotoneCallback& cb, double target) {
  if (!(target > cb.range_lo && target < cb.range_hi))
    throw std::domain_error("transfer undefined: target outside the evaluator range");
  int evals = 0;
  auto g = [&](double x) {
    ++evals;
    return cb.eval(x) - target;
  };
  const double glo = g(cb.domain_lo);
  const double ghi = g(cb.domain_hi);
  if ((glo < 0.0) == (ghi < 0.0))
    throw std::domain_error("transfer undefined: target not bracketed by the evaluator interval");
  const double x = solve_bracketed(g, cb.domain_lo, cb.domain_hi, glo, ghi, 50);
  TransferResult r;
  r.value = x;
  r.residual = std::abs(g(x));
  r.evaluations = evals;
  return r;
}

}  // namespace

double vartheta(double theta) {
  if (!(std::abs(theta) < kHalfPi)) throw std::domain_error("zigzag excluded");
  return std::tan(0.25 * std::numbers::pi - 0.5 * theta);
}

double vartheta_inv(double y) {
  if (!(y > 0.0)) throw std::domain_error("vartheta_inv: argument must be positive");
  return kHalfPi - 2.0 * std::atan(y);
}

RobinParams t_map(double theta, double lambda, double m) {
  if (!(lambda > m) || !(lambda + m > 0.0))
    throw std::domain_error("t_map: requires lambda > |m|");
  return {(lambda + m) * vartheta(theta), (lambda - m) * (lambda + m)};
}

DiracParams t_inv(double a, double mu, double m) {
  if (!(a > 0.0) || !(mu > 0.0)) throw std::domain_error("t_inv: requires a > 0 and mu > 0");
  const double lambda = std::sqrt(mu + m * m);
  return {vartheta_inv(a / (lambda + m)), lambda};
}

ParamQuad make_quad(double theta, double lambda, double m) {
  const RobinParams r = t_map(theta, lambda, m);
  return {theta, lambda, r.a, r.mu, m};
}

TransferResult transfer_a(double /*theta*/, double m, double lambda_d,
                          const MonotoneCallback& mu_omega) {
  if (!mu_omega.increasing) throw std::invalid_argument("transfer_a: evaluator must be increasing");
  return invert_monotone(mu_omega, lambda_d * lambda_d - m * m);
}

TransferResult transfer_theta(double /*a*/, double m, double mu_d,
                              const MonotoneCallback& lambda_omega) {
  if (lambda_omega.increasing)
    throw std::invalid_argument("transfer_theta: evaluator must be decreasing");
  return invert_monotone(lambda_omega, std::sqrt(mu_d + m * m));
}

NegMassCrossing neg_mass_cross(double s_omega, double m, std::optional<double> area) {
  if (!(s_omega > 0.0) || !(m < 0.0))
    throw std::domain_error("neg_mass_cross: requires S > 0 and m < 0");
  NegMassCrossing c;
  c.theta_star = vartheta_inv(2.0 * std::abs(m) / s_omega);
  if (area) c.lower_bound = vartheta_inv(std::abs(m) * std::sqrt(*area / std::numbers::pi));
  return c;
}

double neg_mass_mirror(double s_omega, double m) {
  if (!(s_omega > 0.0) || !(m > 0.0))
    throw std::domain_error("neg_mass_mirror: requires S > 0 and m > 0");
  return std::numbers::pi - vartheta_inv(2.0 * m / s_omega);
}

FixedPoint solve_dirac_fixed_point(const std::function<double(double)>& mu_of_a,
                                   double m, double theta, double mu_inf,
                                   double mu_sup, int tol_bits, double h_floor) {
  if (!(m >= 0.0)) throw std::domain_error("fixed point: requires m >= 0");
  if (!(mu_sup > mu_inf) || !(mu_inf >= 0.0))
    throw std::invalid_argument("fixed point: bad eigenvalue interval");
  const double vt = vartheta(theta);
  int evals = 0;
  auto a_of = [&](double mu) { return (std::sqrt(mu + m * m) + m) * vt; };
  auto h = [&](double mu) {
    ++evals;
    const double r = mu - mu_of_a(a_of(mu));
    return std::abs(r) <= h_floor ? 0.0 : r;
  };
  const double width = mu_sup - mu_inf;
  double delta = 1e-10 * width;
  double lo = mu_inf + delta, hlo = h(lo);
  for (int i = 0; i < 6 && hlo >= 0.0; ++i) {
    delta *= 1e-3;
    lo = mu_inf + delta;
    hlo = h(lo);
  }
  delta = 1e-10 * width;
  double hi = mu_sup - delta, hhi = h(hi);
  for (int i = 0; i < 6 && hhi <= 0.0; ++i) {
    delta *= 1e-3;
    hi = mu_sup - delta;
    hhi = h(hi);
  }
  const double mu = solve_bracketed(h, lo, hi, hlo, hhi, tol_bits);
  FixedPoint fp;
  fp.mu = mu;
  fp.lambda = std::sqrt(mu + m * m);
  fp.a = a_of(mu);
  fp.evaluations = evals;
  return fp;
}

}  // namespace qdot
