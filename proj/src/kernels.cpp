#include "qdot/kernels.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qdot/parallel.hpp"
#include "qdot/special.hpp"

namespace qdot {

namespace {

constexpr cplx kI{0.0, 1.0};

// Fills row `row` with J_k(c r) e^{ik phi} (Dirichlet / interior) or with the
// Robin operator 2 conj(nu) d_zbar u + a u = a J_k e^{ik phi} - c conj(nu) J_{k+1} e^{i(k+1)phi}.
void fill_row(Eigen::MatrixXcd& A, int row, int K, double c, double r, double phi,
              double weight, const cplx* nu_conj, double a, std::vector<double>& jbuf) {
  bessel_j_all(c * r, jbuf);
  auto J = [&](int k) {
    const int p = std::abs(k);
    return (k < 0 && (p % 2 == 1)) ? -jbuf[p] : jbuf[p];
  };
  const cplx e1 = std::polar(1.0, phi);
  cplx ek = std::polar(1.0, -K * phi);
  for (int k = -K; k <= K; ++k) {
    cplx v = J(k) * ek;
    if (nu_conj) v = a * v - c * (*nu_conj) * J(k + 1) * (ek * e1);
    A(row, k + K) = weight * v;
    ek *= e1;
  }
}

}  // namespace

MpsSetup make_mps_setup(const BoundaryCurve& curve, int K, int M, std::uint64_t seed) {
  if (K < 1 || K > 120) throw std::invalid_argument("MPS order K out of range");
  if (M < 4 * (2 * K + 1)) throw std::invalid_argument("MPS requires M >= 4(2K+1)");
  const QuadratureGrid g = build_grid(curve, M);
  const Measure meas = measure(g);
  MpsSetup s;
  s.K = K;
  s.M = M;
  s.z0 = centroid(g, meas.area);
  s.inradius = inradius_estimate(g, s.z0);
  s.r_eff = std::sqrt(meas.area / std::numbers::pi);
  s.b_r.resize(M);
  s.b_phi.resize(M);
  s.b_sqrtw.resize(M);
  s.b_nu_conj.resize(M);
  for (int j = 0; j < M; ++j) {
    const cplx d = g.z[j] - s.z0;
    s.b_r[j] = std::abs(d);
    s.b_phi[j] = std::arg(d);
    s.b_sqrtw[j] = std::sqrt(g.weight[j]);
    s.b_nu_conj[j] = std::conj(g.normal[j]);
  }
  const int P = 2 * (2 * K + 1);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double rad = 0.5 * s.inradius;
  s.i_r.resize(P);
  s.i_phi.resize(P);
  for (int i = 0; i < P; ++i) {
    s.i_r[i] = rad * std::sqrt(unif(rng));
    s.i_phi[i] = 2.0 * std::numbers::pi * unif(rng);
  }
  return s;
}

MpsSystem assemble_mps(const MpsSetup& s, BoundaryKind kind, double a, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("MPS: mu must be positive");
  const double c = std::sqrt(mu);
  const int n = s.columns();
  const int P = s.interior();
  MpsSystem sys;
  sys.A.resize(s.M + P, n);
  std::vector<double> jbuf(s.K + 2);
  const double scale = kind == BoundaryKind::robin ? 1.0 / (a + c + mu * s.r_eff) : 1.0;
  for (int j = 0; j < s.M; ++j) {
    const cplx* nu = kind == BoundaryKind::robin ? &s.b_nu_conj[j] : nullptr;
    fill_row(sys.A, j, s.K, c, s.b_r[j], s.b_phi[j], scale * s.b_sqrtw[j], nu, a, jbuf);
  }
  for (int i = 0; i < P; ++i)
    fill_row(sys.A, s.M + i, s.K, c, s.i_r[i], s.i_phi[i], 1.0, nullptr, 0.0, jbuf);
  sys.column_scale.resize(n);
  for (int k = 0; k < n; ++k) {
    const double nrm = sys.A.col(k).norm();
    if (!std::isfinite(nrm))
      throw std::runtime_error("basis degenerate: increase interior points or reduce K");
    // Underflowed columns stay zero and drop out of the numerical rank.
    sys.column_scale[k] = nrm > 0.0 ? nrm : 1.0;
    if (nrm > 0.0) sys.A.col(k) /= nrm;
  }
  return sys;
}

namespace {

constexpr double kRankTol = 1e-14;

constexpr double kWellConditioned = 1e-10;

// Orthonormal basis of the numerical column space of A = Q R. When the
// diagonal of R is well spread the basis is Q itself; otherwise R = U S V*
// and only directions above kRankTol * s_max are kept.
struct Factored {
  Eigen::MatrixXcd R;   // fast path
  Eigen::MatrixXcd V;   // truncated path: kept right singular vectors of R
  Eigen::VectorXd s;    // truncated path: kept singular values
  bool truncated = false;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd;  // of the boundary block of the basis
};

Factored factor(const MpsSystem& sys, int M, bool want_vector) {
  const int n = static_cast<int>(sys.A.cols());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(sys.A);
  Eigen::MatrixXcd Q = Eigen::MatrixXcd::Identity(sys.A.rows(), n);
  Q.applyOnTheLeft(qr.householderQ());
  Factored f;
  f.R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  const Eigen::VectorXd diag = f.R.diagonal().cwiseAbs();
  Eigen::MatrixXcd Qa;
  if (diag.minCoeff() > kWellConditioned * diag.maxCoeff()) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qa(Q.topRows(M));
    Qa = qa.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  } else {
    Eigen::BDCSVD<Eigen::MatrixXcd> rs(f.R, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd sv = rs.singularValues();
    int rank = 0;
    while (rank < n && sv[rank] > kRankTol * sv[0]) ++rank;
    if (rank == 0) throw std::runtime_error("basis degenerate: increase interior points or reduce K");
    f.truncated = true;
    f.V = rs.matrixV().leftCols(rank);
    f.s = sv.head(rank);
    Qa = Q.topRows(M) * rs.matrixU().leftCols(rank);
  }
  f.svd.compute(Qa, want_vector ? Eigen::ComputeThinV : 0);
  return f;
}

}  // namespace

double sigma_min_at(const MpsSetup& s, BoundaryKind kind, double a, double mu) {
  const MpsSystem sys = assemble_mps(s, kind, a, mu);
  const Factored f = factor(sys, s.M, false);
  return f.svd.singularValues().minCoeff();
}

SigmaDecomposition sigma_min_vector(const MpsSetup& s, BoundaryKind kind, double a,
                                    double mu) {
  const MpsSystem sys = assemble_mps(s, kind, a, mu);
  const Factored f = factor(sys, s.M, true);
  const int n = s.columns();
  const int last = static_cast<int>(f.svd.singularValues().size()) - 1;
  SigmaDecomposition d;
  d.sigma = f.svd.singularValues()(last);
  const Eigen::VectorXcd w = f.svd.matrixV().col(last);
  Eigen::VectorXcd y;
  if (f.truncated) {
    y = f.V * (w.array() / f.s.array().cast<cplx>()).matrix();
  } else {
    y = f.R.triangularView<Eigen::Upper>().solve(w);
  }
  for (int k = 0; k < n; ++k) y[k] /= sys.column_scale[k];
  d.coefficients = y;
  return d;
}

std::vector<SigmaSample> sigma_scan_serial(const MpsSetup& s, BoundaryKind kind, double a,
                                           std::span<const double> mus) {
  std::vector<SigmaSample> out(mus.size());
  for (std::size_t i = 0; i < mus.size(); ++i)
    out[i] = {mus[i], sigma_min_at(s, kind, a, mus[i])};
  return out;
}

std::vector<SigmaSample> sigma_scan_parallel(const MpsSetup& s, BoundaryKind kind,
                                             double a, std::span<const double> mus) {
  std::vector<SigmaSample> out(mus.size());
  parallel_for(mus.size(), [&](std::size_t i) {
    out[i] = {mus[i], sigma_min_at(s, kind, a, mus[i])};
  });
  return out;
}

namespace {

Eigen::MatrixXcd zeta_powers(const QuadratureGrid& grid, cplx z0, double rho, int N) {
  Eigen::MatrixXcd P(grid.size, N + 2);
  for (int j = 0; j < grid.size; ++j) {
    const cplx zeta = (grid.z[j] - z0) / rho;
    cplx p = 1.0;
    for (int n = 0; n <= N + 1; ++n) {
      P(j, n) = p;
      p *= zeta;
    }
  }
  return P;
}

void gram_row(const QuadratureGrid& grid, const Eigen::MatrixXcd& P, double rho, int N,
              int m, GramMatrices& g) {
  for (int n = m; n <= N; ++n) {
    cplx a{}, b{};
    for (int j = 0; j < grid.size; ++j) {
      const cplx pm = P(j, m);
      a += pm * std::conj(P(j, n + 1)) * grid.dz[j];
      b += pm * std::conj(P(j, n)) * grid.weight[j];
    }
    g.A(m, n) = a * rho / (2.0 * kI * static_cast<double>(n + 1));
    g.B(m, n) = b;
  }
}

void hermitian_fill(GramMatrices& g, int N) {
  for (int m = 0; m <= N; ++m) {
    g.A(m, m) = g.A(m, m).real();
    g.B(m, m) = g.B(m, m).real();
    for (int n = m + 1; n <= N; ++n) {
      g.A(n, m) = std::conj(g.A(m, n));
      g.B(n, m) = std::conj(g.B(m, n));
    }
  }
}

void check_gram_args(double rho, int N) {
  if (N < 0 || N > 60) throw std::invalid_argument("Gram degree out of range");
  if (!(rho > 0.0)) throw std::invalid_argument("Gram scale must be positive");
}

}  // namespace

GramMatrices gram_serial(const QuadratureGrid& grid, cplx z0, double rho, int N) {
  check_gram_args(rho, N);
  const Eigen::MatrixXcd P = zeta_powers(grid, z0, rho, N);
  GramMatrices g{Eigen::MatrixXcd::Zero(N + 1, N + 1), Eigen::MatrixXcd::Zero(N + 1, N + 1)};
  for (int m = 0; m <= N; ++m) gram_row(grid, P, rho, N, m, g);
  hermitian_fill(g, N);
  return g;
}

GramMatrices gram_parallel(const QuadratureGrid& grid, cplx z0, double rho, int N) {
  check_gram_args(rho, N);
  const Eigen::MatrixXcd P = zeta_powers(grid, z0, rho, N);
  GramMatrices g{Eigen::MatrixXcd::Zero(N + 1, N + 1), Eigen::MatrixXcd::Zero(N + 1, N + 1)};
  parallel_for(static_cast<std::size_t>(N + 1),
               [&](std::size_t m) { gram_row(grid, P, rho, N, static_cast<int>(m), g); });
  hermitian_fill(g, N);
  return g;
}

}  // namespace qdot
