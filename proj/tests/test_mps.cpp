#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qdot/disk_spectrum.hpp"
#include "qdot/geometry.hpp"
#include "qdot/mps.hpp"
#include "qdot/param_map.hpp"

using namespace qdot;
using std::numbers::pi;

namespace {

const MpsSolver& disk_solver() {
  static const MpsSolver s(BoundaryCurve::disk(2.0));
  return s;
}

const MpsSolver& ellipse_solver() {
  static const MpsSolver s(BoundaryCurve::ellipse(2.0 * std::sqrt(2.0), std::sqrt(2.0)));
  return s;
}

}  // namespace

TEST_SUITE("mps") {

TEST_CASE("disk Dirichlet and Robin cross-oracle") {
  const MpsSolver& s = disk_solver();
  CHECK(std::abs(s.dirichlet_first() - dirichlet_disk_first(2.0)) < 1e-8);
  for (double a : {0.1, 1.0, 10.0}) {
    const EigenSolution e = s.mu_first(a);
    CHECK(std::abs(e.mu - robin_disk_first(2.0, a)) < 1e-8);
    CHECK(e.residual < 1e-6);
    CHECK(e.sigma_min < 1e-8);
  }
}

TEST_CASE("sigma separation and refinement stability on the disk") {
  const MpsSolver& s = disk_solver();
  for (const auto& p : s.sigma_min_scan(BoundaryKind::robin, 1.0, 0.05, 0.45, 9))
    CHECK(p.sigma > 1e-3);
  auto dip_cell = [&](int points) {
    const auto sc = s.sigma_min_scan(BoundaryKind::robin, 1.0, 0.4, 0.9, points);
    std::size_t best = 0;
    for (std::size_t i = 1; i < sc.size(); ++i)
      if (sc[i].sigma < sc[best].sigma) best = i;
    return sc[best].mu;
  };
  const double coarse = dip_cell(11);
  const double fine = dip_cell(21);
  CHECK(std::abs(coarse - fine) <= 0.05 + 1e-12);
}

TEST_CASE("Dirac cross-oracle on the disk") {
  const MpsSolver& s = disk_solver();
  for (double m : {0.0, 1.0})
    for (double th : {-1.0, 0.0, 1.0}) {
      const EigenSolution e = s.lambda_first(m, th);
      CHECK(std::abs(e.eigenvalue - dirac_disk_first(2.0, m, th)) < 1e-7);
      CHECK(e.eigenvalue > m);
    }
}

TEST_CASE("Dirac pair reconstruction on the disk") {
  const MpsSolver& s = disk_solver();
  const EigenSolution e = s.lambda_first(0.0, 0.0);
  const DiracPair p = s.reconstruct_dirac_pair(e, 0.0, e.eigenvalue);
  CHECK(p.vartheta == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p.first_eq_residual < 1e-6);
  CHECK(p.second_eq_residual < 1e-6);
  CHECK(p.boundary_residual < 1e-6);
  CHECK(p.energy_defect < 1e-6);
}

TEST_CASE("ellipse: Rayleigh bound, monotonicity, Faber-Krahn") {
  const MpsSolver& s = ellipse_solver();
  CHECK(s.area() == doctest::Approx(4 * pi).epsilon(1e-12));
  CHECK(s.dirichlet_first() > dirichlet_disk_first(2.0));
  std::vector<std::pair<double, double>> known;
  double prev = 0.0, prev_ratio = 1e300;
  for (int i = 0; i < 10; ++i) {
    const double a = std::pow(10.0, -2.0 + 4.0 * i / 9);
    const EigenSolution e = s.mu_first_known(a, known);
    CHECK(e.mu <= a * s.perimeter() / s.area() + 1e-12);
    CHECK(e.mu < s.dirichlet_first());
    CHECK(e.mu > prev);
    CHECK(e.mu / a < prev_ratio);
    CHECK(e.residual < 1e-6);
    prev = e.mu;
    prev_ratio = e.mu / a;
  }
  CHECK(s.mu_first(1.0).mu > robin_disk_first(2.0, 1.0));
}

TEST_CASE("ellipse: lambda is decreasing and the pair is consistent") {
  const MpsSolver& s = ellipse_solver();
  std::vector<std::pair<double, double>> known;
  double prev = 1e300;
  for (int i = 0; i < 10; ++i) {
    const double th = -1.4 + 2.8 * i / 9;
    const EigenSolution e = s.lambda_first(1.0, th, known);
    CHECK(e.eigenvalue < prev);
    CHECK(e.eigenvalue > 1.0);
    CHECK(e.eigenvalue < std::sqrt(s.dirichlet_first() + 1.0));
    prev = e.eigenvalue;
  }
  const EigenSolution e = s.lambda_first(1.0, 0.4);
  const DiracPair p = s.reconstruct_dirac_pair(e, 1.0, e.eigenvalue);
  CHECK(p.first_eq_residual < 1e-6);
  CHECK(p.second_eq_residual < 1e-6);
  CHECK(p.boundary_residual < 1e-6);
  CHECK(p.energy_defect < 1e-6);
}

TEST_CASE("Dirichlet scaling") {
  const double L = ellipse_solver().dirichlet_first();
  const MpsSolver half(BoundaryCurve::ellipse(std::sqrt(2.0), std::sqrt(0.5)));
  CHECK(half.dirichlet_first() == doctest::Approx(4.0 * L).epsilon(1e-9));
}

TEST_CASE("configuration errors") {
  MpsConfig c;
  c.K = 40;
  c.M = 100;
  CHECK_THROWS_AS(MpsSolver(BoundaryCurve::disk(1.0), c), std::invalid_argument);
  CHECK_THROWS(disk_solver().mu_first(-1.0));
  CHECK_THROWS(disk_solver().lambda_first(-1.0, 0.0));
}

TEST_CASE("CSV rows") {
  const auto csv = solutions_to_csv({disk_solver().mu_first(1.0)});
  CHECK(csv.rfind("a_or_theta,eigenvalue,residual,sigma_min,K,M\n", 0) == 0);
}

}
