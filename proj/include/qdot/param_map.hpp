#pragma once

#include <functional>
#include <optional>

namespace qdot {

// theta -> (1 - sin theta) / cos theta = tan(pi/4 - theta/2), a decreasing
// bijection from (-pi/2, pi/2) onto (0, inf). Throws std::domain_error
// ("zigzag excluded") at or beyond +-pi/2.
double vartheta(double theta);

// Closed-form inverse: pi/2 - 2 atan(y). Throws std::domain_error for y <= 0.
double vartheta_inv(double y);

struct RobinParams {
  double a = 0.0;
  double mu = 0.0;
};

struct DiracParams {
  double theta = 0.0;
  double lambda = 0.0;
};

// A consistent (theta, lambda, a, mu; m) tuple.
struct ParamQuad {
  double theta = 0.0;
  double lambda = 0.0;
  double a = 0.0;
  double mu = 0.0;
  double m = 0.0;
};

// (theta, lambda) -> (a, mu) = ((lambda + m) vartheta(theta), lambda^2 - m^2).
// Requires lambda > |m| so that a > 0 and mu > 0.
RobinParams t_map(double theta, double lambda, double m);

// (a, mu) -> (vartheta^{-1}(a / (sqrt(mu + m^2) + m)), sqrt(mu + m^2)).
DiracParams t_inv(double a, double mu, double m);

ParamQuad make_quad(double theta, double lambda, double m);

// A monotone scalar evaluator with an explicit bracketing interval for its
// argument and the open range its values may take.
struct MonotoneCallback {
  std::function<double(double)> eval;
  double domain_lo = 0.0;
  double domain_hi = 0.0;
  bool increasing = true;
  double range_lo = 0.0;
  double range_hi = 0.0;
};

struct TransferResult {
  double value = 0.0;     // the transferred parameter (a or theta)
  double residual = 0.0;  // |eval(value) - target|
  int evaluations = 0;
};

// a with mu_Omega(a) = lambda_D^2 - m^2; `mu_omega` is increasing in a.
// Throws std::domain_error("transfer undefined") if the target lies outside
// the evaluator's range.
TransferResult transfer_a(double theta, double m, double lambda_d,
                          const MonotoneCallback& mu_omega);

// theta with lambda_Omega(theta) = sqrt(mu_D + m^2); `lambda_omega` is
// decreasing in theta.
TransferResult transfer_theta(double a, double m, double mu_d,
                              const MonotoneCallback& lambda_omega);

// Smallest theta in (-pi/2, pi/2) at which |m| is an eigenvalue for m < 0:
// vartheta^{-1}(2|m| / S). With the area given, also the isoperimetric-type
// lower bound vartheta^{-1}(|m| sqrt(area / pi)).
struct NegMassCrossing {
  double theta_star = 0.0;
  std::optional<double> lower_bound;
};

NegMassCrossing neg_mass_cross(double s_omega, double m,
                               std::optional<double> area = std::nullopt);

// Mirror for m > 0 on (pi/2, 3pi/2): pi - vartheta^{-1}(2m / S).
double neg_mass_mirror(double s_omega, double m);

// First positive Dirac eigenvalue through the T-map fixed point
//   lambda = sqrt(mu(( lambda + m ) vartheta(theta)) + m^2),
// solved in the mu variable on (mu_inf, mu_sup). `mu_of_a` must be increasing
// with values in (mu_inf, mu_sup) for every a > 0.
struct FixedPoint {
  double lambda = 0.0;
  double mu = 0.0;
  double a = 0.0;
  int evaluations = 0;
};

// `tol_bits` is the relative accuracy of the root in bits. Residuals
// |mu - mu_of_a(a(mu))| at or below `h_floor` count as exact roots, for
// callbacks that carry their own noise.
FixedPoint solve_dirac_fixed_point(const std::function<double(double)>& mu_of_a,
                                   double m, double theta, double mu_inf,
                                   double mu_sup, int tol_bits = 50, double h_floor = 0.0);

}  // namespace qdot
