#pragma once

#include <span>
#include <string>
#include <vector>

namespace qdot {

// Spectra on the disk D_R from separation of variables. With
// u = J_k(x r / R) e^{ik phi}, the boundary condition 2 conj(nu) d_zbar u + a u = 0
// reduces to
//
//     a R J_k(x) = x J_{k+1}(x),      mu = (x / R)^2.
//
// For a > 0 and k >= 0 there is exactly one root between consecutive zeros
// j_{k+1,n-1} < x < j_{k,n} (j_{k+1,0} = 0); for k = -p < 0 the roots lie in
// (j_{p-1,n}, j_{p,n}).

// First n_max roots for angular index k, returned as mu values (ascending).
std::vector<double> robin_disk_eigs(double R, double a, int k, int n_max);

// mu_D(a): smallest eigenvalue over all angular indices.
double robin_disk_first(double R, double a);

// (j_{0,1} / R)^2.
double dirichlet_disk_first(double R);

// lambda_D(theta) for m >= 0, theta in (-pi/2, pi/2), via the T-map fixed point.
double dirac_disk_first(double R, double m, double theta);

// Positive Dirac branch (k, n) via the fixed point on the Robin branch (k, n).
double dirac_disk_branch(double R, double m, double theta, int k, int n);

// Bracket (in mu) of the Robin branch (k, n) over a in (0, inf).
struct MuRange {
  double lo = 0.0;
  double hi = 0.0;
};
MuRange robin_branch_range(double R, int k, int n);

// Generalized disk eigencondition for any theta with cos(theta) != 0 and any
// mass: eigenvalues lambda with lambda^2 > m^2 and sign(lambda) = sign solve
//
//   (lambda + m) vartheta(theta) R J_k(x) = x J_{k+1}(x),  x = R sqrt(lambda^2 - m^2),
//
// with vartheta(theta) = (1 - sin theta) / cos theta (negative beyond pi/2).
// Roots are found by a sign-change scan in x, independently of the T-map.
struct DiracLevel {
  int k = 0;
  int n = 0;  // 1-based radial index within fixed k, ordered by x
  double lambda = 0.0;
};

std::vector<DiracLevel> dirac_disk_levels(double R, double m, double theta,
                                          int sign, int k, double x_max);

// The `count` eigenvalues of the given sign closest to zero among |lambda| > |m|
// (all angular indices), sorted by |lambda|.
std::vector<DiracLevel> dirac_disk_spectrum(double R, double m, double theta,
                                            int sign, int count);

// Zigzag spectrum: flat level sign*m plus +-sqrt(Lambda_{k,n} + m^2).
struct ZigzagLevels {
  double flat_level = 0.0;
  std::vector<double> positive;  // ascending
  std::vector<double> negative;  // descending (closest to zero first)
  double first_nonnegative() const;
};

ZigzagLevels zigzag_levels(double R, double m, int sign, int count = 6);

enum class DiskOperator { robin, dirac, dirichlet };

struct DiskBranch {
  DiskOperator op = DiskOperator::robin;
  int k = 0;
  int n = 1;
  int sign = 1;
  double m = 0.0;
  std::vector<double> params;
  std::vector<double> values;
};

struct BranchSet {
  int k_min = 0;
  int k_max = 0;
  int n_max = 1;
  bool negative = false;  // dirac: also emit the negative spectrum
};

// Branch tables sorted by (sign, k, n); parameter order follows `grid`.
// Parallel over grid points; output independent of thread count.
std::vector<DiskBranch> disk_curves(DiskOperator op, double R, double m,
                                    std::span<const double> grid,
                                    const BranchSet& branches);

// CSV `param,k,n,value`, 15 significant digits.
std::string branches_to_csv(const std::vector<DiskBranch>& branches);

}  // namespace qdot
