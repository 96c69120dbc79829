#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdot/geometry.hpp"
#include "qdot/kernels.hpp"

namespace qdot {

struct MpsConfig {
  int K = 20;
  int M = 256;
  std::uint64_t seed = 12345;
  double dip_tol = 1e-8;
  int scan_points = 32;
  int escalations = 4;  // K -> K + 8 retries before giving up
  bool parallel = true;
};

struct EigenSolution {
  double param = 0.0;       // a (Robin), theta (Dirac), 0 (Dirichlet)
  double eigenvalue = 0.0;  // mu or lambda
  double a = 0.0;           // Robin parameter of the underlying u (0 for Dirichlet)
  double mu = 0.0;
  double sigma_min = 0.0;
  double residual = 0.0;    // ||2 conj(nu) d_zbar u + a u||_{L2(bdry)} / interior RMS of u
  int K = 0;
  int M = 0;
  cplx z0{};
  Eigen::VectorXcd coefficients;  // orders -K..K, unit interior RMS
};

// u and v of the Dirac pair, both as Fourier-Bessel sums about z0 with
// frequency c = sqrt(mu): u orders -K..K, v orders -K+1..K+1.
struct DiracPair {
  double lambda = 0.0;
  double m = 0.0;
  double vartheta = 0.0;
  double c = 0.0;
  cplx z0{};
  int K = 0;
  Eigen::VectorXcd u;
  Eigen::VectorXcd v;
  double first_eq_residual = 0.0;     // ||-2i d_z v - (lambda - m) u|| / ||u|| (interior)
  double second_eq_residual = 0.0;    // ||-2i d_zbar u - (lambda + m) v|| / ||u|| (interior)
  double boundary_residual = 0.0;     // ||v - i vartheta nu u||_{bdry} / ||u||_{bdry}
  double energy_defect = 0.0;         // (lambda-m)|u|^2 - (lambda+m)|v|^2 - vartheta |u|^2_bdry, relative
};

struct SigmaDip {
  double mu = 0.0;
  double sigma = 0.0;
};

class MpsSolver {
 public:
  MpsSolver(BoundaryCurve curve, MpsConfig config = {});

  const BoundaryCurve& curve() const { return curve_; }
  const MpsConfig& config() const { return config_; }
  double area() const { return area_; }
  double perimeter() const { return perimeter_; }
  double dirichlet_first() const { return dirichlet_.eigenvalue; }
  const EigenSolution& dirichlet_solution() const { return dirichlet_; }

  std::vector<SigmaSample> sigma_min_scan(BoundaryKind kind, double a, double mu_lo,
                                          double mu_hi, int points) const;

  // mu_Omega(a), searched on (0, min(Lambda_Omega, a |dOmega| / |Omega|)].
  EigenSolution mu_first(double a) const;
  // Same, searched on [lo, hi] first; falls back to the full window.
  EigenSolution mu_first_in(double a, double lo, double hi) const;

  // lambda_Omega(theta) for m >= 0 via the T-map fixed point on mu_first.
  // `known` collects (a, mu) pairs and is reused to narrow later searches.
  EigenSolution lambda_first(double m, double theta) const;
  EigenSolution lambda_first(double m, double theta,
                             std::vector<std::pair<double, double>>& known) const;

  // mu_first narrowed by (and recorded into) a list of known (a, mu) pairs.
  EigenSolution mu_first_known(double a, std::vector<std::pair<double, double>>& known) const;

  DiracPair reconstruct_dirac_pair(const EigenSolution& sol, double m, double lambda) const;

  // Evaluations of an expansion u = sum alpha_k J_k(c r) e^{ik phi} at z.
  static cplx evaluate(const Eigen::VectorXcd& coeffs, int k_min, double c, cplx z0, cplx z);

  // int_Omega |f|^2 dA for a callable f(z) by the star map about z0.
  double domain_l2_squared(const std::function<double(cplx)>& abs2) const;
  double boundary_l2_squared(const std::function<double(cplx)>& abs2) const;

 private:
  BoundaryCurve curve_;
  MpsConfig config_;
  QuadratureGrid grid_;
  double area_ = 0.0;
  double perimeter_ = 0.0;
  cplx z0_{};
  double inradius_ = 0.0;
  std::vector<MpsSetup> setups_;  // K, K+8, ... per escalation level
  std::size_t start_level_ = 0;   // level the Dirichlet solve needed
  std::size_t robin_level_ = 0;   // level a probe Robin solve needed
  EigenSolution dirichlet_;

  std::optional<SigmaDip> find_first_dip(const MpsSetup& s, BoundaryKind kind, double a,
                                         double lo, double hi, int points) const;
  EigenSolution solve(BoundaryKind kind, double a, double lo, double hi, int points) const;
  EigenSolution finish(const MpsSetup& s, BoundaryKind kind, double a, double mu,
                       double sigma) const;
};

// Window for mu(a) implied by known pairs (a_i, mu_i): mu is increasing and
// mu/a is decreasing in a.
std::pair<double, double> monotone_window(double a,
                                          const std::vector<std::pair<double, double>>& known,
                                          double lo, double hi);

// CSV `a_or_theta,eigenvalue,residual,sigma_min,K,M`.
std::string solutions_to_csv(const std::vector<EigenSolution>& rows);

}  // namespace qdot
