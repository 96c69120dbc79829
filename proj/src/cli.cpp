#include "qdot/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "qdot/bergman.hpp"
#include "qdot/disk_spectrum.hpp"
#include "qdot/domain_spec.hpp"
#include "qdot/hardy.hpp"
#include "qdot/mps.hpp"
#include "qdot/parallel.hpp"
#include "qdot/param_map.hpp"
#include "qdot/shape_opt.hpp"
#include "qdot/special.hpp"

namespace qdot {

namespace {

using json = nlohmann::ordered_json;

// Canonical manifest (no wall-clock) and its hash.
struct Manifest {
  json body;
  std::string hash;
  std::vector<std::string> outputs;
};

struct Options {
  std::string domain;
  std::string out = ".";
  double radius = 2.0;
  double mass = 0.0;
  std::string op = "robin";
  double a_min = 0.05, a_max = 20.0;
  double theta_min = -1.47, theta_max = 1.47;
  int points = 0;
  int degree = 25;
  int orders = 20;
  int nodes = 256;
  int jobs = 0;
  std::uint64_t seed = 12345;
  mutable std::optional<Manifest> manifest;
};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > 0.0)) throw std::invalid_argument("log grid needs positive bounds");
  std::vector<double> v = linspace(std::log(lo), std::log(hi), n);
  for (double& x : v) x = std::exp(x);
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Manifest make_manifest(const std::string& sub, const Options& o, json params,
                       std::vector<std::string> outputs) {
  Manifest m;
  m.outputs = std::move(outputs);
  m.body["subcommand"] = sub;
  m.body["params"] = std::move(params);
  m.body["solver"] = {{"K", o.orders}, {"M", o.nodes}, {"N", o.degree},
                      {"dip_tol", 1e-8}, {"verdict_tol", 1e-7}, {"seed", o.seed}};
  m.body["input_hash"] = o.domain.empty() ? std::string() : sha256_hex(read_file(o.domain));
  m.body["outputs"] = m.outputs;
  m.hash = sha256_hex(m.body.dump());
  o.manifest = m;
  return m;
}

void write_output(const Options& o, const Manifest& m, const std::string& name,
                  const std::string& content) {
  std::filesystem::create_directories(o.out);
  std::ofstream f(std::filesystem::path(o.out) / name, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + name);
  f << "# manifest: " << m.hash << "\n" << content;
}

void write_manifest(const Options& o, const Manifest& m, double seconds) {
  json full = m.body;
  full["hash"] = m.hash;
  full["wall_clock_seconds"] = seconds;
  std::filesystem::create_directories(o.out);
  std::ofstream f(std::filesystem::path(o.out) / "manifest.json");
  f << full.dump(2) << "\n";
}

BoundaryCurve load_domain(const Options& o, bool radius_given) {
  if (o.domain.empty()) return BoundaryCurve::disk(o.radius);
  const DomainSpec spec = load_domain_spec(o.domain);
  BoundaryCurve c = spec.resolved();
  if (radius_given && c.is_disk()) c = BoundaryCurve::disk(o.radius, c.center());
  return c;
}

MpsConfig mps_config(const Options& o) {
  MpsConfig c;
  c.K = o.orders;
  c.M = o.nodes;
  c.seed = o.seed;
  return c;
}

std::string fmt(const char* f, double v) {
  char b[64];
  std::snprintf(b, sizeof b, f, v);
  return b;
}

// ---- subcommands --------------------------------------------------------

int cmd_disk_curves(const Options& o) {
  const int points = o.points > 0 ? o.points : 200;
  BranchSet bs;
  const int korder = std::min(o.orders, 40);
  bs.k_min = -korder;
  bs.k_max = korder;
  bs.n_max = 3;
  DiskOperator op = DiskOperator::robin;
  std::vector<double> grid;
  if (o.op == "robin") {
    grid = logspace(o.a_min, o.a_max, points);
  } else if (o.op == "dirac") {
    op = DiskOperator::dirac;
    bs.negative = true;
    grid = linspace(o.theta_min, o.theta_max, points);
  } else {
    op = DiskOperator::dirichlet;
    grid = {0.0};
  }
  json params = {{"radius", o.radius}, {"mass", o.mass}, {"operator", o.op},
                 {"grid", grid.size() > 1 ? json{grid.front(), grid.back(), points} : json{}},
                 {"k_range", {bs.k_min, bs.k_max}}, {"n_max", bs.n_max}};
  std::vector<std::string> outs{"disk_curves.csv"};
  if (op == DiskOperator::dirac) outs.push_back("zigzag_levels.csv");
  const Manifest m = make_manifest("disk-curves", o, params, outs);
  const auto branches = disk_curves(op, o.radius, o.mass, grid, bs);
  write_output(o, m, "disk_curves.csv", branches_to_csv(branches));
  if (op == DiskOperator::dirac) {
    std::string z = "theta,kind,value\n";
    for (int sign : {1, -1}) {
      const ZigzagLevels lv = zigzag_levels(o.radius, o.mass, sign, 6);
      const std::string th = sign > 0 ? "pi/2" : "-pi/2";
      z += th + ",flat," + fmt("%.15g", lv.flat_level) + "\n";
      for (double v : lv.positive) z += th + ",positive," + fmt("%.15g", v) + "\n";
      for (double v : lv.negative) z += th + ",negative," + fmt("%.15g", v) + "\n";
    }
    write_output(o, m, "zigzag_levels.csv", z);
  }
  return kExitOk;
}

int cmd_domain_eig(const Options& o, bool radius_given) {
  const BoundaryCurve curve = load_domain(o, radius_given);
  json params = {{"domain", o.domain}, {"radius", o.radius}, {"operator", o.op},
                 {"mass", o.mass}};
  std::vector<double> grid;
  if (o.op == "robin") {
    grid = logspace(o.a_min, o.a_max, o.points > 0 ? o.points : 10);
    params["a_grid"] = {o.a_min, o.a_max, grid.size()};
  } else if (o.op == "dirac") {
    grid = linspace(o.theta_min, o.theta_max, o.points > 0 ? o.points : 5);
    params["theta_grid"] = {o.theta_min, o.theta_max, grid.size()};
  }
  const Manifest m = make_manifest("domain-eig", o, params, {"domain_eig.csv"});
  const MpsSolver solver(curve, mps_config(o));
  std::vector<EigenSolution> rows;
  if (o.op == "dirichlet") {
    rows.push_back(solver.dirichlet_solution());
  } else if (o.op == "robin") {
    std::vector<std::pair<double, double>> known;
    for (double a : grid) rows.push_back(solver.mu_first_known(a, known));
  } else {
    std::vector<std::pair<double, double>> known;
    for (double th : grid) rows.push_back(solver.lambda_first(o.mass, th, known));
  }
  write_output(o, m, "domain_eig.csv", solutions_to_csv(rows));
  return kExitOk;
}

int cmd_s_omega(const Options& o, bool radius_given) {
  const BoundaryCurve curve = load_domain(o, radius_given);
  const int M = std::max(o.nodes, 512);
  json params = {{"domain", o.domain}, {"radius", o.radius}, {"degree", o.degree}, {"nodes", M}};
  const Manifest m = make_manifest("s-omega", o, params, {"s_omega.csv"});
  std::vector<CarlemanCheck> rows;
  for (int N = 0; N < o.degree; N += 5) rows.push_back(carleman_check(curve, N, M));
  rows.push_back(carleman_check(curve, o.degree, M));
  write_output(o, m, "s_omega.csv", carleman_to_csv(rows));
  return kExitOk;
}

int cmd_hardy(const Options& o) {
  const Manifest m = make_manifest("hardy", o, json{{"series_degree", 200}},
                                   {"hardy.csv", "pullback.csv"});
  std::vector<HardyRow> rows;
  auto add = [&](const std::string& name, const TaylorSeries& f) {
    rows.push_back({name, norms(f), vukotic_gap(f)});
  };
  add("one", TaylorSeries::polynomial({1.0}));
  add("z", TaylorSeries::polynomial({0.0, 1.0}));
  add("extremal_c2_0.5", TaylorSeries::geometric(1.0, 0.5, 200));
  add("extremal_c2_0.3i", TaylorSeries::geometric(1.0, cplx(0.0, 0.3), 200));
  add("poly_1_z_z2", TaylorSeries::polynomial({1.0, 1.0, 1.0}));
  write_output(o, m, "hardy.csv", hardy_to_csv(rows));
  std::string p = "case,lhs,rhs,defect,tail\n";
  for (double c2 : {0.0, 0.3, 0.6})
    for (int deg : {0, 1}) {
      std::vector<cplx> u(deg + 1, 0.0);
      u[deg] = 1.0;
      const PullbackResult r = pullback_identity(u, MobiusMap(c2, 1.0, 0.0));
      char line[256];
      std::snprintf(line, sizeof line, "c2=%g u=%s,%.15g,%.15g,%.3e,%.3e\n", c2,
                    deg == 0 ? "1" : "w", r.lhs, r.rhs, r.defect, r.tail);
      p += line;
    }
  write_output(o, m, "pullback.csv", p);
  return kExitOk;
}

int cmd_fk_sweep(const Options& o, bool radius_given) {
  if (o.domain.empty()) throw std::invalid_argument("fk-sweep requires --domain");
  const BoundaryCurve curve = load_domain(o, radius_given);
  SweepConfig cfg;
  cfg.mps = mps_config(o);
  cfg.disk_radius = o.radius;
  cfg.bergman_N = std::min(o.degree, 40);
  const std::string id = std::filesystem::path(o.domain).stem().string();
  std::vector<double> grid;
  json params = {{"domain", o.domain}, {"radius", o.radius}, {"operator", o.op}, {"mass", o.mass}};
  if (o.op == "robin") {
    grid = logspace(o.a_min, o.a_max, o.points > 0 ? o.points : 9);
    params["a_grid"] = {o.a_min, o.a_max, grid.size()};
  } else if (o.op == "dirac") {
    grid = linspace(o.theta_min, o.theta_max, o.points > 0 ? o.points : 5);
    params["theta_grid"] = {o.theta_min, o.theta_max, grid.size()};
  } else {
    throw std::invalid_argument("fk-sweep supports --operator robin or dirac");
  }
  const Manifest m = make_manifest("fk-sweep", o, params, {"fk_sweep.csv", "fk_sweep_summary.txt"});
  const SweepReport rep = o.op == "robin" ? fk_sweep_mu(id, curve, grid, cfg)
                                          : fk_sweep_lambda(id, curve, o.mass, grid, cfg);
  write_output(o, m, "fk_sweep.csv", sweep_to_csv({rep}));
  write_output(o, m, "fk_sweep_summary.txt", sweep_summary(rep));
  return rep.all(Verdict::inconclusive) ? kExitInconclusive : kExitOk;
}

int cmd_neg_mass(const Options& o, bool radius_given) {
  const BoundaryCurve curve = load_domain(o, radius_given);
  const double mass = o.mass < 0.0 ? o.mass : -1.0;
  const int N = std::min(o.degree, 40);
  const int M = std::max(o.nodes, 512);
  json params = {{"domain", o.domain}, {"radius", o.radius}, {"mass", mass}, {"degree", N}};
  const Manifest m = make_manifest("neg-mass", o, params, {"neg_mass.csv"});
  const NegMassReport r = neg_mass_report(curve, mass, N, M);
  char line[512];
  std::snprintf(line, sizeof line, "%.15g,%.15g,%.15g,%.15g,%.15g,%.3e,%.15g\n", r.m, r.S,
                r.theta_star, r.lower_bound, r.gap, r.identity_defect, r.mirror);
  write_output(o, m, "neg_mass.csv",
               std::string("m,S,theta_star,lower_bound,gap,identity_defect,mirror\n") + line);
  return kExitOk;
}

int cmd_invariance(const Options& o) {
  const std::vector<double> thetas =
      o.points > 0 ? linspace(o.theta_min, o.theta_max, o.points) : std::vector<double>{-0.7, 0.3, 1.1};
  json params = {{"radius", o.radius}, {"mass", o.mass}, {"thetas", thetas}};
  const Manifest m = make_manifest("invariance", o, params, {"invariance.csv"});
  const InvarianceReport r = invariance_check(o.radius, o.mass, thetas);
  std::string s = "theta,charge_error,chiral_error,branch_error\n";
  for (const auto& x : r.samples) {
    char line[192];
    std::snprintf(line, sizeof line, "%.15g,%.3e,%.3e,%.3e\n", x.theta, x.charge_error,
                  x.chiral_error, x.branch_error);
    s += line;
  }
  write_output(o, m, "invariance.csv", s);
  return r.max_error() < 1e-9 ? kExitOk : kExitSolverFailure;
}

int cmd_selfcheck(const Options& o) {
  const Manifest m = make_manifest("selfcheck", o, json::object(), {"selfcheck.csv"});
  struct Row {
    std::string name;
    double value, tol;
  };
  std::vector<Row> rows;
  rows.push_back({"bessel_j0_zero", std::abs(bessel_j(0, bessel_zero(0, 1)).value), 1e-12});
  rows.push_back({"dirichlet_disk", std::abs(dirichlet_disk_first(2.0) - 1.4457964907366), 1e-9});
  rows.push_back({"robin_slope", std::abs(robin_disk_first(2.0, 1e-4) / 1e-4 - 1.0), 1e-3});
  {
    double tmax = 0.0;
    for (double th : {-1.0, 0.0, 1.0})
      for (double lam : {1.5, 3.0}) {
        const RobinParams rp = t_map(th, lam, 1.0);
        const DiracParams dp = t_inv(rp.a, rp.mu, 1.0);
        tmax = std::max({tmax, std::abs(dp.theta - th), std::abs(dp.lambda - lam) / lam});
      }
    rows.push_back({"tmap_roundtrip", tmax, 1e-12});
  }
  rows.push_back({"s_omega_disk", std::abs(s_omega(BoundaryCurve::disk(2.0), 20).S - 1.0), 1e-10});
  rows.push_back({"vukotic_z", std::abs(vukotic_gap(TaylorSeries::polynomial({0.0, 1.0})) -
                                        (1.0 - std::pow(3.0, -0.25))), 1e-12});
  {
    const PullbackResult r = pullback_identity({0.0, 1.0}, MobiusMap(0.3, 1.0, 0.0));
    rows.push_back({"pullback_c2_0.3", r.defect, 1e-8 + r.tail});
  }
  const std::vector<double> th{0.3};
  rows.push_back({"invariance_disk", invariance_check(2.0, 1.0, th).max_error(), 1e-9});
  {
    const MpsSolver s(BoundaryCurve::disk(2.0), mps_config(o));
    rows.push_back({"mps_dirichlet_disk", std::abs(s.dirichlet_first() - dirichlet_disk_first(2.0)), 1e-8});
  }
  rows.push_back({"neg_mass_disk", std::abs(neg_mass_report(BoundaryCurve::disk(2.0), -1.0, 10).gap), 1e-9});
  std::string s = "check,value,tolerance,status\n";
  bool ok = true;
  for (const auto& r : rows) {
    const bool pass = r.value < r.tol;
    ok = ok && pass;
    char line[192];
    std::snprintf(line, sizeof line, "%s,%.3e,%.3e,%s\n", r.name.c_str(), r.value, r.tol,
                  pass ? "pass" : "fail");
    s += line;
    std::cout << (pass ? "PASS " : "FAIL ") << r.name << "\n";
  }
  write_output(o, m, "selfcheck.csv", s);
  return ok ? kExitOk : kExitSolverFailure;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"qdot: quantum-dot Dirac and dbar-Robin spectra toolkit", "qdot"};
  app.require_subcommand(1);
  Options o;

  auto add_out = [&](CLI::App* s) {
    s->add_option("--out", o.out, "output directory");
    s->add_option("--jobs", o.jobs, "OpenMP threads (default: all)")->check(CLI::NonNegativeNumber);
  };
  auto add_mps = [&](CLI::App* s) {
    s->add_option("--orders", o.orders, "MPS order K")->check(CLI::Range(1, 120));
    s->add_option("--nodes", o.nodes, "boundary nodes M")->check(CLI::Range(16, 1 << 16));
    s->add_option("--seed", o.seed, "seed for interior points");
  };
  auto add_grid = [&](CLI::App* s) {
    s->add_option("--a-min", o.a_min);
    s->add_option("--a-max", o.a_max);
    s->add_option("--theta-min", o.theta_min);
    s->add_option("--theta-max", o.theta_max);
    s->add_option("--points", o.points)->check(CLI::PositiveNumber);
  };
  const std::vector<std::string> ops{"robin", "dirac", "dirichlet"};

  auto* disk = app.add_subcommand("disk-curves", "disk branch tables");
  disk->add_option("--radius", o.radius);
  disk->add_option("--mass", o.mass);
  disk->add_option("--operator", o.op)->check(CLI::IsMember(ops));
  disk->add_option("--orders", o.orders, "angular indices -K..K")->check(CLI::Range(0, 40));
  add_grid(disk);
  add_out(disk);

  auto* eig = app.add_subcommand("domain-eig", "first eigenvalues on a domain by MPS");
  eig->add_option("--domain", o.domain)->check(CLI::ExistingFile);
  eig->add_option("--radius", o.radius);
  eig->add_option("--mass", o.mass);
  eig->add_option("--operator", o.op)->check(CLI::IsMember(ops));
  add_grid(eig);
  add_mps(eig);
  add_out(eig);

  auto* so = app.add_subcommand("s-omega", "Hardy-to-Bergman constant S_Omega");
  so->add_option("--domain", o.domain)->check(CLI::ExistingFile);
  so->add_option("--radius", o.radius);
  so->add_option("--degree", o.degree)->check(CLI::Range(0, 40));
  so->add_option("--nodes", o.nodes)->check(CLI::Range(16, 1 << 16));
  add_out(so);

  auto* hardy = app.add_subcommand("hardy", "Hardy/Bergman norms on the unit disk");
  add_out(hardy);

  auto* fk = app.add_subcommand("fk-sweep", "Faber-Krahn evidence sweep against the disk");
  fk->add_option("--domain", o.domain)->check(CLI::ExistingFile);
  fk->add_option("--radius", o.radius);
  fk->add_option("--mass", o.mass);
  fk->add_option("--operator", o.op)->check(CLI::IsMember(ops));
  fk->add_option("--degree", o.degree)->check(CLI::Range(0, 40));
  add_grid(fk);
  add_mps(fk);
  add_out(fk);

  auto* neg = app.add_subcommand("neg-mass", "negative-mass crossing angle");
  neg->add_option("--domain", o.domain)->check(CLI::ExistingFile);
  neg->add_option("--radius", o.radius);
  neg->add_option("--mass", o.mass);
  neg->add_option("--degree", o.degree)->check(CLI::Range(0, 40));
  neg->add_option("--nodes", o.nodes)->check(CLI::Range(16, 1 << 16));
  add_out(neg);

  auto* inv = app.add_subcommand("invariance", "charge-conjugation and chiral checks on the disk");
  inv->add_option("--radius", o.radius);
  inv->add_option("--mass", o.mass);
  inv->add_option("--theta-min", o.theta_min);
  inv->add_option("--theta-max", o.theta_max);
  inv->add_option("--points", o.points)->check(CLI::PositiveNumber);
  add_out(inv);

  auto* self = app.add_subcommand("selfcheck", "run the invariant suite");
  add_mps(self);
  add_out(self);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (o.jobs > 0) set_thread_count(o.jobs);

  const auto t0 = std::chrono::steady_clock::now();
  try {
    int code = kExitOk;
    std::string name;
    for (auto* s : {disk, eig, so, hardy, fk, neg, inv, self})
      if (s->parsed()) name = s->get_name();
    const bool radius_given = [&] {
      for (auto* s : {eig, so, fk, neg})
        if (s->parsed() && s->count("--radius") > 0) return true;
      return false;
    }();
    if (name == "disk-curves") code = cmd_disk_curves(o);
    else if (name == "domain-eig") code = cmd_domain_eig(o, radius_given);
    else if (name == "s-omega") code = cmd_s_omega(o, radius_given);
    else if (name == "hardy") code = cmd_hardy(o);
    else if (name == "fk-sweep") code = cmd_fk_sweep(o, radius_given);
    else if (name == "neg-mass") code = cmd_neg_mass(o, radius_given);
    else if (name == "invariance") code = cmd_invariance(o);
    else code = cmd_selfcheck(o);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.manifest) write_manifest(o, *o.manifest, secs);
    return code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  }
}

}  // namespace qdot
