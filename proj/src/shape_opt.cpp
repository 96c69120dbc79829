#include "qdot/shape_opt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qdot/bergman.hpp"
#include "qdot/disk_spectrum.hpp"
#include "qdot/parallel.hpp"
#include "qdot/param_map.hpp"

namespace qdot {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

bool same_class(double x, double y, double tol) { return classify(x, tol) == classify(y, tol); }

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "inconclusive";
  }
}

Verdict classify(double margin, double tol) {
  if (margin > tol) return Verdict::pass;
  if (margin < -tol) return Verdict::fail;
  return Verdict::inconclusive;
}

bool SweepReport::all(Verdict v) const {
  return std::all_of(points.begin(), points.end(), [v](const SweepPoint& p) { return p.verdict == v; });
}

bool SweepReport::any(Verdict v) const {
  return std::any_of(points.begin(), points.end(), [v](const SweepPoint& p) { return p.verdict == v; });
}

void check_area_match(const BoundaryCurve& domain, double disk_radius) {
  const double target = std::numbers::pi * disk_radius * disk_radius;
  const double area = measure(domain, 512).area;
  if (!(std::abs(area - target) <= 1e-10 * target))
    throw std::invalid_argument("area mismatch: normalize the domain to the reference disk area");
}

SweepReport fk_sweep_mu(const std::string& id, const BoundaryCurve& domain,
                        std::span<const double> a_grid, const SweepConfig& cfg) {
  if (a_grid.empty()) throw std::invalid_argument("empty a grid");
  check_area_match(domain, cfg.disk_radius);
  const double R = cfg.disk_radius;
  const MpsSolver solver(domain, cfg.mps);
  SweepReport rep;
  rep.domain = id;
  rep.quantity = "mu";
  rep.area = solver.area();
  rep.points.resize(a_grid.size());
  parallel_for(a_grid.size(), [&](std::size_t i) {
    SweepPoint& p = rep.points[i];
    p.param = a_grid[i];
    p.omega = solver.mu_first(p.param).mu;
    p.disk = robin_disk_first(R, p.param);
    p.margin = p.omega - p.disk;
    p.verdict = classify(p.margin, cfg.tol);
  });

  Asymptotics& as = rep.asym;
  as.S_omega = s_omega(domain, cfg.bergman_N, cfg.bergman_M).S;
  as.carleman_bound = 2.0 * std::sqrt(std::numbers::pi / rep.area);
  as.Lambda_omega = solver.dirichlet_first();
  as.Lambda_disk = dirichlet_disk_first(R);
  const auto lo = std::min_element(rep.points.begin(), rep.points.end(),
                                   [](auto& x, auto& y) { return x.param < y.param; });
  const auto hi = std::max_element(rep.points.begin(), rep.points.end(),
                                   [](auto& x, auto& y) { return x.param < y.param; });
  as.slope_margin = lo->margin / lo->param;
  as.small_end_reference = as.S_omega - as.carleman_bound;
  as.large_end_reference = as.Lambda_omega - as.Lambda_disk;
  as.small_end_consistent = same_class(as.slope_margin, as.small_end_reference, cfg.tol);
  as.large_end_consistent = same_class(hi->margin, as.large_end_reference, cfg.tol);
  return rep;
}

SweepReport fk_sweep_lambda(const std::string& id, const BoundaryCurve& domain, double m,
                            std::span<const double> theta_grid, const SweepConfig& cfg) {
  if (theta_grid.empty()) throw std::invalid_argument("empty theta grid");
  if (!(m >= 0.0)) throw std::domain_error("fk_sweep_lambda: requires m >= 0");
  check_area_match(domain, cfg.disk_radius);
  const double R = cfg.disk_radius;
  const MpsSolver solver(domain, cfg.mps);
  SweepReport rep;
  rep.domain = id;
  rep.quantity = "lambda";
  rep.m = m;
  rep.area = solver.area();
  rep.points.resize(theta_grid.size());
  parallel_for(theta_grid.size(), [&](std::size_t i) {
    SweepPoint& p = rep.points[i];
    p.param = theta_grid[i];
    p.omega = solver.lambda_first(m, p.param).eigenvalue;
    p.disk = dirac_disk_first(R, m, p.param);
    p.margin = p.omega - p.disk;
    p.verdict = classify(p.margin, cfg.tol);
  });

  Asymptotics& as = rep.asym;
  as.S_omega = s_omega(domain, cfg.bergman_N, cfg.bergman_M).S;
  as.carleman_bound = 2.0 * std::sqrt(std::numbers::pi / rep.area);
  as.Lambda_omega = solver.dirichlet_first();
  as.Lambda_disk = dirichlet_disk_first(R);
  const auto lo = std::min_element(rep.points.begin(), rep.points.end(),
                                   [](auto& x, auto& y) { return x.param < y.param; });
  const auto hi = std::max_element(rep.points.begin(), rep.points.end(),
                                   [](auto& x, auto& y) { return x.param < y.param; });
  as.small_end_reference =
      std::sqrt(as.Lambda_omega + m * m) - std::sqrt(as.Lambda_disk + m * m);
  as.small_end_consistent = same_class(lo->margin, as.small_end_reference, cfg.tol);
  as.large_end_reference = 0.0;
  as.large_end_consistent = hi->verdict != Verdict::fail;
  return rep;
}

bool verdicts_stable(const SweepReport& base, const SweepReport& refined) {
  if (base.points.size() != refined.points.size()) return false;
  for (std::size_t i = 0; i < base.points.size(); ++i) {
    const SweepPoint& p = base.points[i];
    const SweepPoint& q = refined.points[i];
    if (p.verdict != q.verdict) return false;
    if (p.verdict == Verdict::pass && std::abs(p.margin - q.margin) > 0.1 * std::abs(p.margin))
      return false;
  }
  return true;
}

std::string sweep_to_csv(const std::vector<SweepReport>& reports) {
  std::string s = "domain,param,value_omega,value_disk,margin,verdict\n";
  char line[256];
  for (const auto& r : reports)
    for (const auto& p : r.points) {
      std::snprintf(line, sizeof line, "%s,%.15g,%.15g,%.15g,%.15g,%s\n", r.domain.c_str(),
                    p.param, p.omega, p.disk, p.margin, verdict_name(p.verdict));
      s += line;
    }
  return s;
}

std::string sweep_summary(const SweepReport& r) {
  const Asymptotics& a = r.asym;
  std::ostringstream os;
  os.precision(12);
  os << "{\n"
     << "  domain: " << r.domain << "\n"
     << "  quantity: " << r.quantity << "\n"
     << "  mass: " << r.m << "\n"
     << "  area: " << r.area << "\n"
     << "  S_omega: " << a.S_omega << "\n"
     << "  carleman_bound: " << a.carleman_bound << "\n"
     << "  Lambda_omega: " << a.Lambda_omega << "\n"
     << "  Lambda_disk: " << a.Lambda_disk << "\n";
  if (r.quantity == "mu") os << "  slope_margin: " << a.slope_margin << "\n";
  os << "  small_end_reference: " << a.small_end_reference << "\n"
     << "  small_end_consistent: " << (a.small_end_consistent ? "yes" : "no") << "\n"
     << "  large_end_reference: " << a.large_end_reference << "\n"
     << "  large_end_consistent: " << (a.large_end_consistent ? "yes" : "no") << "\n"
     << "  status: "
     << (r.any(Verdict::fail) ? "fail" : r.all(Verdict::pass) ? "supports" : "inconclusive")
     << "\n}\n";
  return os.str();
}

TransferReport transfer_roundtrip(const std::string& id, const BoundaryCurve& domain,
                                  double theta, double m, const SweepConfig& cfg) {
  if (!(m >= 0.0)) throw std::domain_error("transfer_roundtrip: requires m >= 0");
  check_area_match(domain, cfg.disk_radius);
  const double R = cfg.disk_radius;
  const MpsSolver solver(domain, cfg.mps);
  const double Lam = solver.dirichlet_first();
  std::vector<std::pair<double, double>> known;

  TransferReport rep;
  rep.theta = theta;
  rep.m = m;
  rep.inverse_domain = id;
  rep.lambda_disk = dirac_disk_first(R, m, theta);

  // (i) a from the Omega inverse.
  const double target = rep.lambda_disk * rep.lambda_disk - m * m;
  auto mu_omega = [&](double a) { return solver.mu_first_known(a, known).mu; };
  const double a_lo = target * solver.area() / solver.perimeter() * (1.0 - 1e-9);
  double a_hi = 2.0 * a_lo;
  while (mu_omega(a_hi) <= target) {
    a_hi *= 2.0;
    if (a_hi > 1e8) throw std::domain_error("transfer undefined: target not reached");
  }
  MonotoneCallback mcb{mu_omega, a_lo, a_hi, true, 0.0, Lam};
  const TransferResult ta = transfer_a(theta, m, rep.lambda_disk, mcb);
  rep.a = ta.value;
  rep.residual_a = ta.residual;
  const double mu_d = robin_disk_first(R, rep.a);
  rep.mu_margin = mu_omega(rep.a) - mu_d;
  rep.lambda_margin = solver.lambda_first(m, theta, known).eigenvalue - rep.lambda_disk;
  rep.mu_verdict = classify(rep.mu_margin, cfg.tol);
  rep.lambda_verdict = classify(rep.lambda_margin, cfg.tol);

  // (ii) theta from the Omega inverse at the same a.
  std::map<double, double> memo;
  auto lambda_omega = [&](double th) {
    auto it = memo.find(th);
    if (it != memo.end()) return it->second;
    const double v = solver.lambda_first(m, th, known).eigenvalue;
    memo.emplace(th, v);
    return v;
  };
  const double tau = std::sqrt(mu_d + m * m);
  const double edge = kHalfPi - 1e-6;
  double th_lo = t_inv(rep.a, mu_d, m).theta, th_hi = th_lo;
  double step = 0.05;
  while (lambda_omega(th_hi) > tau) {
    th_lo = th_hi;
    th_hi = std::min(th_hi + step, edge);
    step *= 2.0;
    if (th_hi >= edge && lambda_omega(th_hi) > tau)
      throw std::domain_error("transfer undefined: target not reached");
  }
  step = 0.05;
  while (lambda_omega(th_lo) < tau) {
    th_hi = th_lo;
    th_lo = std::max(th_lo - step, -edge);
    step *= 2.0;
    if (th_lo <= -edge && lambda_omega(th_lo) < tau)
      throw std::domain_error("transfer undefined: target not reached");
  }
  if (th_lo == th_hi) {
    rep.theta_back = th_lo;
    rep.residual_theta = std::abs(lambda_omega(th_lo) - tau);
  } else {
    MonotoneCallback lcb{lambda_omega, th_lo, th_hi, false, m, std::sqrt(Lam + m * m)};
    const TransferResult tt = transfer_theta(rep.a, m, mu_d, lcb);
    rep.theta_back = tt.value;
    rep.residual_theta = tt.residual;
  }
  rep.lambda_margin_back = lambda_omega(rep.theta_back) - dirac_disk_first(R, m, rep.theta_back);
  rep.lambda_back_verdict = classify(rep.lambda_margin_back, cfg.tol);
  const bool i_ok = rep.mu_verdict != Verdict::pass || rep.lambda_verdict == Verdict::pass;
  const bool ii_ok = rep.lambda_back_verdict != Verdict::pass || rep.mu_verdict == Verdict::pass;
  rep.consistent = i_ok && ii_ok;
  return rep;
}

NegMassReport neg_mass_report(const BoundaryCurve& domain, double m, int N, int M) {
  if (!(m < 0.0)) throw std::domain_error("neg_mass_report: requires m < 0");
  const SOmega s = s_omega(domain, N, M);
  const NegMassCrossing c = neg_mass_cross(s.S, m, s.area);
  NegMassReport r;
  r.m = m;
  r.S = s.S;
  r.theta_star = c.theta_star;
  r.lower_bound = *c.lower_bound;
  r.gap = r.theta_star - r.lower_bound;
  r.vartheta_star = vartheta(r.theta_star);
  auto u = [&](cplx z) {
    const cplx zeta = (z - s.gram.z0) / s.gram.rho;
    cplx acc{};
    for (int n = s.N; n >= 0; --n) acc = acc * zeta + s.w[n];
    return acc;
  };
  const double dom = domain_integral(domain, [&](cplx z) { return std::norm(u(z)); }, M);
  const QuadratureGrid g = build_grid(domain, M);
  double bdy = 0.0;
  for (int j = 0; j < g.size; ++j) bdy += std::norm(u(g.z[j])) * g.weight[j];
  r.rayleigh_value = 2.0 * std::abs(m) * dom / bdy;
  r.identity_defect = std::abs(r.vartheta_star - r.rayleigh_value);
  r.mirror = neg_mass_mirror(s.S, std::abs(m));
  return r;
}

double InvarianceReport::max_error() const {
  double e = 0.0;
  for (const auto& s : samples) e = std::max({e, s.charge_error, s.chiral_error, s.branch_error});
  return e;
}

namespace {

double spectrum_distance(const std::vector<DiracLevel>& p, const std::vector<DiracLevel>& q) {
  if (p.size() != q.size()) return std::numeric_limits<double>::infinity();
  std::vector<double> a, b;
  for (const auto& l : p) a.push_back(l.lambda);
  for (const auto& l : q) b.push_back(-l.lambda);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

std::vector<DiracLevel> above_mass_levels(double R, double m, double theta, int sign, int k) {
  auto lv = dirac_disk_levels(R, m, theta, sign, k, 20.0);
  std::erase_if(lv, [&](const DiracLevel& l) { return !(std::abs(l.lambda) > std::abs(m)); });
  return lv;
}

}  // namespace

InvarianceReport invariance_check(double R, double m, std::span<const double> thetas, int count) {
  InvarianceReport rep;
  rep.R = R;
  rep.m = m;
  for (double th : thetas) {
    InvarianceSample s;
    s.theta = th;
    const auto pos = dirac_disk_spectrum(R, m, th, +1, count);
    s.charge_error = spectrum_distance(pos, dirac_disk_spectrum(R, m, -th, -1, count));
    s.chiral_error =
        spectrum_distance(pos, dirac_disk_spectrum(R, -m, std::numbers::pi - th, -1, count));
    double be = 0.0;
    for (int k = -2; k <= 2; ++k) {
      const auto p = above_mass_levels(R, m, th, +1, k);
      const auto cc = above_mass_levels(R, m, -th, -1, -k - 1);
      const auto ch = above_mass_levels(R, -m, std::numbers::pi - th, -1, k);
      for (std::size_t n = 0; n < 2; ++n) {
        if (n >= p.size() || n >= cc.size() || n >= ch.size()) {
          be = std::numeric_limits<double>::infinity();
          continue;
        }
        be = std::max({be, std::abs(p[n].lambda + cc[n].lambda), std::abs(p[n].lambda + ch[n].lambda)});
      }
    }
    s.branch_error = be;
    rep.samples.push_back(s);
  }
  return rep;
}

}  // namespace qdot
