#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qdot/geometry.hpp"

namespace qdot {

// Hot loops shared by the MPS solver and the Bergman module. Each has a
// serial reference and an OpenMP version; both produce identical results.

enum class BoundaryKind { robin, dirichlet };

// Fourier-Bessel trial space J_k(c r) e^{ik phi}, k = -K..K, about z0,
// sampled on M boundary nodes and P interior points.
struct MpsSetup {
  int K = 0;
  int M = 0;
  cplx z0{};
  double inradius = 0.0;
  double r_eff = 0.0;  // sqrt(area / pi)
  std::vector<double> b_r, b_phi, b_sqrtw;
  std::vector<cplx> b_nu_conj;
  std::vector<double> i_r, i_phi;

  int columns() const { return 2 * K + 1; }
  int interior() const { return static_cast<int>(i_r.size()); }
};

MpsSetup make_mps_setup(const BoundaryCurve& curve, int K, int M, std::uint64_t seed);

// Stacked [boundary; interior] matrix with unit-norm columns.
struct MpsSystem {
  Eigen::MatrixXcd A;
  Eigen::VectorXd column_scale;  // original column norms
};

MpsSystem assemble_mps(const MpsSetup& s, BoundaryKind kind, double a, double mu);

// Smallest singular value of the boundary block of an orthonormal basis for
// the column space of the stacked matrix.
struct SigmaDecomposition {
  double sigma = 0.0;
  Eigen::VectorXcd coefficients;  // in the unscaled basis, orders -K..K
};

double sigma_min_at(const MpsSetup& s, BoundaryKind kind, double a, double mu);
SigmaDecomposition sigma_min_vector(const MpsSetup& s, BoundaryKind kind, double a,
                                    double mu);

struct SigmaSample {
  double mu = 0.0;
  double sigma = 0.0;
};

std::vector<SigmaSample> sigma_scan_serial(const MpsSetup& s, BoundaryKind kind, double a,
                                           std::span<const double> mus);
std::vector<SigmaSample> sigma_scan_parallel(const MpsSetup& s, BoundaryKind kind,
                                             double a, std::span<const double> mus);

// Gram matrices of zeta^n, zeta = (z - z0) / rho, n = 0..N:
//   A_mn = int_Omega zeta^m conj(zeta^n) dA
//        = (rho / (2i (n+1))) oint zeta^m conj(zeta)^{n+1} dz
//   B_mn = oint zeta^m conj(zeta^n) |dz|
struct GramMatrices {
  Eigen::MatrixXcd A;
  Eigen::MatrixXcd B;
};

GramMatrices gram_serial(const QuadratureGrid& grid, cplx z0, double rho, int N);
GramMatrices gram_parallel(const QuadratureGrid& grid, cplx z0, double rho, int N);

}  // namespace qdot
