#include "qdot/mps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qdot/param_map.hpp"
#include "qdot/roots.hpp"
#include "qdot/special.hpp"

namespace qdot {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kJ01 = 2.404825557695773;
constexpr int kHintPoints = 12;
constexpr int kCheckPoints = 200;
constexpr double kMuNoise = 1e-11;  // relative scatter of an accepted dip location

int escalated_M(int M, int K) {
  int need = 4 * (2 * K + 1);
  need += need % 2;
  return std::max(M, need);
}

}  // namespace

MpsSolver::MpsSolver(BoundaryCurve curve, MpsConfig config)
    : curve_(std::move(curve)), config_(config) {
  if (config_.K < 1) throw std::invalid_argument("MPS order K must be positive");
  if (config_.M < 4 * (2 * config_.K + 1))
    throw std::invalid_argument("MPS requires M >= 4(2K+1)");
  if (config_.scan_points < 4) throw std::invalid_argument("scan needs at least 4 points");
  grid_ = build_grid(curve_, config_.M);
  const Measure meas = measure(grid_);
  area_ = meas.area;
  perimeter_ = meas.perimeter;
  z0_ = centroid(grid_, area_);
  inradius_ = inradius_estimate(grid_, z0_);
  for (int e = 0; e <= config_.escalations; ++e) {
    const int K = config_.K + 8 * e;
    setups_.push_back(make_mps_setup(curve_, K, escalated_M(config_.M, K), config_.seed));
  }
  const double lo = 0.7 * kJ01 * kJ01 * std::numbers::pi / area_;
  const double hi = 1.05 * kJ01 * kJ01 / (inradius_ * inradius_);
  dirichlet_ = solve(BoundaryKind::dirichlet, 0.0, lo, hi, std::max(48, config_.scan_points));
  start_level_ = static_cast<std::size_t>((dirichlet_.K - config_.K) / 8);
  robin_level_ = start_level_;
  try {
    const double a = std::sqrt(std::numbers::pi / area_);
    const EigenSolution probe = solve(BoundaryKind::robin, a, 1e-6 * dirichlet_first(),
                                      std::min(dirichlet_first(), a * perimeter_ / area_),
                                      config_.scan_points);
    robin_level_ = static_cast<std::size_t>((probe.K - config_.K) / 8);
  } catch (const std::runtime_error&) {
  }
}

std::vector<SigmaSample> MpsSolver::sigma_min_scan(BoundaryKind kind, double a,
                                                   double mu_lo, double mu_hi,
                                                   int points) const {
  if (!(mu_lo > 0.0) || !(mu_hi > mu_lo) || points < 2)
    throw std::invalid_argument("sigma scan: bad window");
  std::vector<double> mus(points);
  for (int i = 0; i < points; ++i)
    mus[i] = mu_lo + (mu_hi - mu_lo) * i / (points - 1);
  const MpsSetup& s = setups_.front();
  return config_.parallel ? sigma_scan_parallel(s, kind, a, mus)
                          : sigma_scan_serial(s, kind, a, mus);
}

std::optional<SigmaDip> MpsSolver::find_first_dip(const MpsSetup& s, BoundaryKind kind,
                                                  double a, double lo, double hi,
                                                  int points) const {
  std::vector<double> mus(points);
  for (int i = 0; i < points; ++i) mus[i] = lo + (hi - lo) * i / (points - 1);
  const auto samples = config_.parallel ? sigma_scan_parallel(s, kind, a, mus)
                                        : sigma_scan_serial(s, kind, a, mus);
  std::optional<SigmaDip> best;
  for (int i = 0; i < points; ++i) {
    const double si = samples[i].sigma;
    const bool left_ok = i == 0 || si <= samples[i - 1].sigma;
    const bool right_ok = i == points - 1 || si <= samples[i + 1].sigma;
    if (!left_ok || !right_ok) continue;
    const double l = mus[std::max(i - 1, 0)];
    const double r = mus[std::min(i + 1, points - 1)];
    const Minimum mn = minimize_unimodal(
        [&](double mu) {
          const double sg = sigma_min_at(s, kind, a, mu);
          return sg * sg;
        },
        l, r, 1e-14);
    const SigmaDip dip{mn.x, std::sqrt(mn.fx)};
    if (dip.sigma < config_.dip_tol) return dip;
    if (!best || dip.sigma < best->sigma) best = dip;
  }
  return best;
}

EigenSolution MpsSolver::solve(BoundaryKind kind, double a, double lo, double hi,
                               int points) const {
  const std::size_t first = kind == BoundaryKind::robin ? robin_level_ : start_level_;
  for (std::size_t e = first; e < setups_.size(); ++e) {
    const MpsSetup& s = setups_[e];
    const auto dip = find_first_dip(s, kind, a, lo, hi, points);
    if (dip && dip->sigma < config_.dip_tol) return finish(s, kind, a, dip->mu, dip->sigma);
  }
  throw std::runtime_error("eigenvalue not found: enlarge K/M");
}

cplx MpsSolver::evaluate(const Eigen::VectorXcd& coeffs, int k_min, double c, cplx z0,
                         cplx z) {
  const cplx d = z - z0;
  const double r = std::abs(d);
  const double phi = std::arg(d);
  const int k_max = k_min + static_cast<int>(coeffs.size()) - 1;
  const int p_max = std::max(std::abs(k_min), std::abs(k_max));
  std::vector<double> jb(p_max + 1);
  bessel_j_all(c * r, jb);
  const cplx e1 = std::polar(1.0, phi);
  cplx ek = std::polar(1.0, k_min * phi);
  cplx acc{};
  for (int k = k_min; k <= k_max; ++k) {
    const int p = std::abs(k);
    const double jk = (k < 0 && (p % 2 == 1)) ? -jb[p] : jb[p];
    acc += coeffs[k - k_min] * jk * ek;
    ek *= e1;
  }
  return acc;
}

EigenSolution MpsSolver::finish(const MpsSetup& s, BoundaryKind kind, double a, double mu,
                                double sigma) const {
  const SigmaDecomposition dec = sigma_min_vector(s, kind, a, mu);
  const double c = std::sqrt(mu);
  Eigen::VectorXcd coef = dec.coefficients;
  double rms = 0.0;
  for (int i = 0; i < s.interior(); ++i) {
    const cplx z = s.z0 + std::polar(s.i_r[i], s.i_phi[i]);
    rms += std::norm(evaluate(coef, -s.K, c, s.z0, z));
  }
  rms = std::sqrt(rms / s.interior());
  coef /= rms;

  // Residual on a grid offset from the collocation nodes.
  const QuadratureGrid check = build_grid(curve_, 2 * s.M);
  double res = 0.0;
  for (int j = 0; j < check.size; ++j) {
    const cplx z = check.z[j];
    cplx bu = evaluate(coef, -s.K, c, s.z0, z);
    if (kind == BoundaryKind::robin) {
      const cplx dzbar = -0.5 * c * evaluate(coef, -s.K + 1, c, s.z0, z);
      bu = 2.0 * std::conj(check.normal[j]) * dzbar + a * bu;
    }
    res += std::norm(bu) * check.weight[j];
  }

  EigenSolution sol;
  sol.param = a;
  sol.eigenvalue = mu;
  sol.a = a;
  sol.mu = mu;
  sol.sigma_min = sigma;
  sol.residual = std::sqrt(res);
  sol.K = s.K;
  sol.M = s.M;
  sol.z0 = s.z0;
  sol.coefficients = coef;
  return sol;
}

EigenSolution MpsSolver::mu_first(double a) const {
  if (!(a > 0.0)) throw std::invalid_argument("Robin parameter must be positive");
  const double hi = std::min(dirichlet_first(), a * perimeter_ / area_);
  return solve(BoundaryKind::robin, a, 1e-6 * hi, hi, config_.scan_points);
}

EigenSolution MpsSolver::mu_first_in(double a, double lo, double hi) const {
  if (!(a > 0.0)) throw std::invalid_argument("Robin parameter must be positive");
  const double cap = std::min(dirichlet_first(), a * perimeter_ / area_);
  hi = std::min(hi, cap);
  const double pad = 1e-7 * hi;
  lo = std::max(lo - pad, 1e-6 * cap);
  hi = std::min(hi + pad, cap);
  if (hi > lo) {
    for (std::size_t e = robin_level_; e < setups_.size(); ++e) {
      const MpsSetup& s = setups_[e];
      const int points = hi - lo < 1e-4 * hi ? 4 : kHintPoints;
      const auto dip = find_first_dip(s, BoundaryKind::robin, a, lo, hi, points);
      if (dip && dip->sigma < config_.dip_tol)
        return finish(s, BoundaryKind::robin, a, dip->mu, dip->sigma);
    }
  }
  return mu_first(a);
}

std::pair<double, double> monotone_window(double a,
                                          const std::vector<std::pair<double, double>>& known,
                                          double lo, double hi) {
  for (const auto& [a0, mu0] : known) {
    if (a >= a0) {
      lo = std::max(lo, mu0);
      hi = std::min(hi, mu0 * a / a0);
    } else {
      lo = std::max(lo, mu0 * a / a0);
      hi = std::min(hi, mu0);
    }
  }
  return {lo, hi};
}

EigenSolution MpsSolver::mu_first_known(double a,
                                        std::vector<std::pair<double, double>>& known) const {
  for (const auto& [a0, mu0] : known)
    if (a0 == a) {
      const auto [lo, hi] = monotone_window(a, known, 0.0, dirichlet_first());
      return mu_first_in(a, lo, hi);
    }
  const auto [lo, hi] = monotone_window(a, known, 0.0, dirichlet_first());
  EigenSolution s = known.empty() ? mu_first(a) : mu_first_in(a, lo, hi);
  known.emplace_back(a, s.mu);
  return s;
}

EigenSolution MpsSolver::lambda_first(double m, double theta) const {
  std::vector<std::pair<double, double>> known;
  return lambda_first(m, theta, known);
}

EigenSolution MpsSolver::lambda_first(double m, double theta,
                                      std::vector<std::pair<double, double>>& known) const {
  if (!(m >= 0.0)) throw std::domain_error("lambda_first: requires m >= 0");
  if (!(std::abs(theta) < 0.5 * std::numbers::pi))
    throw std::domain_error("zigzag excluded: use zigzag_levels");
  auto mu_of_a = [&](double a) { return mu_first_known(a, known).mu; };
  const FixedPoint fp = solve_dirac_fixed_point(mu_of_a, m, theta, 0.0, dirichlet_first(), 40,
                                                kMuNoise * dirichlet_first());
  EigenSolution sol = mu_first_known(fp.a, known);
  sol.param = theta;
  sol.eigenvalue = std::sqrt(sol.mu + m * m);
  return sol;
}

double MpsSolver::domain_l2_squared(const std::function<double(cplx)>& abs2) const {
  return domain_integral(curve_, abs2, config_.M);
}

double MpsSolver::boundary_l2_squared(const std::function<double(cplx)>& abs2) const {
  double total = 0.0;
  for (int j = 0; j < grid_.size; ++j) total += abs2(grid_.z[j]) * grid_.weight[j];
  return total;
}

DiracPair MpsSolver::reconstruct_dirac_pair(const EigenSolution& sol, double m,
                                            double lambda) const {
  if (!(lambda > m) || !(lambda + m > 0.0))
    throw std::domain_error("reconstruct_dirac_pair: requires lambda > |m|");
  if (!(sol.a > 0.0)) throw std::invalid_argument("reconstruct_dirac_pair: needs a Robin solution");
  DiracPair p;
  p.lambda = lambda;
  p.m = m;
  p.c = std::sqrt(sol.mu);
  p.z0 = sol.z0;
  p.K = sol.K;
  p.vartheta = sol.a / (lambda + m);
  p.u = sol.coefficients;
  p.v = (kI * p.c / (lambda + m)) * sol.coefficients;
  const int K = sol.K;
  const double c = p.c;

  // Interior residuals on a fixed point cloud.
  std::mt19937_64 rng(config_.seed + 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double e1 = 0.0, e2 = 0.0, un = 0.0;
  for (int i = 0; i < kCheckPoints; ++i) {
    const cplx z = z0_ + std::polar(0.8 * inradius_ * std::sqrt(unif(rng)),
                                    2.0 * std::numbers::pi * unif(rng));
    const cplx u = evaluate(p.u, -K, c, p.z0, z);
    const cplx v = evaluate(p.v, -K + 1, c, p.z0, z);
    const cplx dz_v = 0.5 * c * evaluate(p.v, -K, c, p.z0, z);
    const cplx dzbar_u = -0.5 * c * evaluate(p.u, -K + 1, c, p.z0, z);
    e1 += std::norm(-2.0 * kI * dz_v - (lambda - m) * u);
    e2 += std::norm(-2.0 * kI * dzbar_u - (lambda + m) * v);
    un += std::norm(u);
  }
  p.first_eq_residual = std::sqrt(e1 / un);
  p.second_eq_residual = std::sqrt(e2 / un);

  const QuadratureGrid check = build_grid(curve_, 2 * config_.M);
  double eb = 0.0, ub = 0.0;
  for (int j = 0; j < check.size; ++j) {
    const cplx u = evaluate(p.u, -K, c, p.z0, check.z[j]);
    const cplx v = evaluate(p.v, -K + 1, c, p.z0, check.z[j]);
    eb += std::norm(v - kI * p.vartheta * check.normal[j] * u) * check.weight[j];
    ub += std::norm(u) * check.weight[j];
  }
  p.boundary_residual = std::sqrt(eb / ub);

  const double u2 = domain_l2_squared([&](cplx z) { return std::norm(evaluate(p.u, -K, c, p.z0, z)); });
  const double v2 = domain_l2_squared([&](cplx z) { return std::norm(evaluate(p.v, -K + 1, c, p.z0, z)); });
  const double ub2 = boundary_l2_squared([&](cplx z) { return std::norm(evaluate(p.u, -K, c, p.z0, z)); });
  p.energy_defect =
      std::abs((lambda - m) * u2 - (lambda + m) * v2 - p.vartheta * ub2) / ((lambda - m) * u2 + ub2);
  return p;
}

std::string solutions_to_csv(const std::vector<EigenSolution>& rows) {
  std::string s = "a_or_theta,eigenvalue,residual,sigma_min,K,M\n";
  char line[192];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%.15g,%.15g,%.6e,%.6e,%d,%d\n", r.param, r.eigenvalue,
                  r.residual, r.sigma_min, r.K, r.M);
    s += line;
  }
  return s;
}

}  // namespace qdot
