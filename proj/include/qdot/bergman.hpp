#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdot/geometry.hpp"
#include "qdot/kernels.hpp"

namespace qdot {

class MpsSolver;

// Gram pair for the holomorphic monomials zeta^n, zeta = (z - z0) / rho.
struct GramPair {
  int N = 0;
  double rho = 1.0;
  cplx z0{};
  Eigen::MatrixXcd A;  // domain
  Eigen::MatrixXcd B;  // boundary
};

GramPair gram_pair(const BoundaryCurve& curve, int N, int M, bool parallel = true);

struct SOmega {
  int N = 0;
  double S = 0.0;
  double area = 0.0;
  double perimeter = 0.0;
  GramPair gram;
  Eigen::VectorXcd w;        // minimizer in the monomial basis, w* A w = 1
  double el_residual = 0.0;  // max_n |S (A w)_n - (B w)_n|
};

// Smallest generalized eigenvalue of B w = S A w. Throws std::runtime_error
// ("reduce N or rescale") if A is not numerically positive definite.
SOmega s_omega(const BoundaryCurve& curve, int N, int M = 512);

// Steps N = 0, step, 2 step, ... up to N_max and returns the eigenpair at the
// first N with |S(N) - S(N - step)| < tol. Throws std::runtime_error if S
// has not stabilized by N_max.
SOmega s_omega_converged(const BoundaryCurve& curve, int N_max = 35, int step = 5,
                         double tol = 1e-6, int M = 512);

struct CarlemanCheck {
  int N = 0;
  double S = 0.0;
  double bound = 0.0;  // 2 sqrt(pi / |Omega|)
  double margin = 0.0;
};

CarlemanCheck carleman_check(const BoundaryCurve& curve, int N, int M = 512);

struct SlopeCheck {
  std::vector<double> a;
  std::vector<double> ratio;  // mu(a) / a
  double extrapolant = 0.0;   // polynomial extrapolation of mu(a)/a to a = 0
  double S = 0.0;
  double discrepancy = 0.0;   // |extrapolant - S| / S
};

SlopeCheck slope_check(const MpsSolver& solver, const std::vector<double>& a_small, int N,
                       int M = 512);

// Value at 0 of the interpolating polynomial through (x_i, y_i) (Neville).
double neville_at_zero(const std::vector<double>& x, const std::vector<double>& y);

// CSV `N,S,bound,margin`.
std::string carleman_to_csv(const std::vector<CarlemanCheck>& rows);

}  // namespace qdot
