#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qdot/geometry.hpp"
#include "qdot/shape_opt.hpp"

using namespace qdot;
using std::numbers::pi;

namespace {

BoundaryCurve ellipse4pi() { return BoundaryCurve::ellipse(2.0 * std::sqrt(2.0), std::sqrt(2.0)); }

}  // namespace

TEST_SUITE("shape_opt") {

TEST_CASE("verdict band") {
  CHECK(classify(2e-7, 1e-7) == Verdict::pass);
  CHECK(classify(1e-7, 1e-7) == Verdict::inconclusive);
  CHECK(classify(-1e-7, 1e-7) == Verdict::inconclusive);
  CHECK(classify(-3e-7, 1e-7) == Verdict::fail);
  CHECK(std::string(verdict_name(Verdict::inconclusive)) == "inconclusive");
}

TEST_CASE("area match is enforced") {
  CHECK_NOTHROW(check_area_match(ellipse4pi(), 2.0));
  CHECK_THROWS_AS(check_area_match(BoundaryCurve::ellipse(2.0, 1.0), 2.0), std::invalid_argument);
  SweepConfig cfg;
  const std::vector<double> grid{1.0};
  CHECK_THROWS_AS(fk_sweep_mu("e", BoundaryCurve::ellipse(2.0, 1.0), grid, cfg), std::invalid_argument);
}

TEST_CASE("disk self-sweeps are inconclusive") {
  SweepConfig cfg;
  const std::vector<double> as{0.01, 1.0, 100.0};
  const SweepReport r = fk_sweep_mu("disk", BoundaryCurve::disk(2.0), as, cfg);
  CHECK(r.all(Verdict::inconclusive));
  const std::vector<double> ths{-1.0, 0.5};
  const SweepReport l = fk_sweep_lambda("disk", BoundaryCurve::disk(2.0), 1.0, ths, cfg);
  CHECK(l.all(Verdict::inconclusive));
  CHECK(sweep_summary(r).find("inconclusive") != std::string::npos);
}

TEST_CASE("ellipse mu sweep supports the inequality and is stable") {
  SweepConfig cfg;
  const std::vector<double> as{0.01, 0.3, 10.0};
  const SweepReport r = fk_sweep_mu("ellipse", ellipse4pi(), as, cfg);
  CHECK(r.all(Verdict::pass));
  CHECK(r.asym.small_end_consistent);
  CHECK(r.asym.large_end_consistent);
  SweepConfig fine = cfg;
  fine.mps.K += 8;
  fine.mps.M *= 2;
  fine.bergman_M *= 2;
  CHECK(verdicts_stable(r, fk_sweep_mu("ellipse", ellipse4pi(), as, fine)));
  const std::string csv = sweep_to_csv({r});
  CHECK(csv.rfind("domain,param,value_omega,value_disk,margin,verdict\n", 0) == 0);
}

TEST_CASE("stability rule") {
  SweepReport a, b;
  a.points = {{1.0, 0, 0, 1.0, Verdict::pass}};
  b.points = {{1.0, 0, 0, 1.05, Verdict::pass}};
  CHECK(verdicts_stable(a, b));
  b.points[0].margin = 1.2;
  CHECK(!verdicts_stable(a, b));
  b.points[0] = {1.0, 0, 0, 0.0, Verdict::inconclusive};
  CHECK(!verdicts_stable(a, b));
}

TEST_CASE("transfer round trip") {
  SweepConfig cfg;
  const TransferReport e = transfer_roundtrip("ellipse", ellipse4pi(), 0.0, 0.0, cfg);
  CHECK(e.mu_verdict == Verdict::pass);
  CHECK(e.lambda_verdict == Verdict::pass);
  CHECK(e.consistent);
  CHECK(e.inverse_domain == "ellipse");
  const TransferReport e1 = transfer_roundtrip("ellipse", ellipse4pi(), 0.0, 1.0, cfg);
  CHECK(e1.mu_verdict == e.mu_verdict);
  CHECK(e1.lambda_verdict == e.lambda_verdict);
  const TransferReport d = transfer_roundtrip("disk", BoundaryCurve::disk(2.0), 0.3, 0.0, cfg);
  CHECK(d.mu_verdict == Verdict::inconclusive);
  CHECK(d.lambda_verdict == Verdict::inconclusive);
  CHECK(d.consistent);
}

TEST_CASE("negative mass crossing") {
  const NegMassReport d = neg_mass_report(BoundaryCurve::disk(2.0), -1.0);
  CHECK(d.theta_star == doctest::Approx(pi / 2 - 2 * std::atan(2.0)).epsilon(1e-9));
  CHECK(std::abs(d.gap) < 1e-9);
  CHECK(d.identity_defect < 1e-9);
  const NegMassReport e = neg_mass_report(ellipse4pi(), -1.0);
  CHECK(e.S > 1.0);
  CHECK(e.gap > 0.0);
  CHECK(e.identity_defect < 1e-8);
  CHECK(e.mirror == doctest::Approx(pi - e.theta_star).epsilon(1e-12));
  CHECK_THROWS(neg_mass_report(ellipse4pi(), 1.0));
}

TEST_CASE("charge conjugation and chiral symmetry on the disk") {
  const std::vector<double> th{-0.7, 0.3, 1.1};
  const InvarianceReport r = invariance_check(2.0, 1.0, th);
  CHECK(r.samples.size() == 3);
  CHECK(r.max_error() < 1e-9);
  const std::vector<double> zero{0.0};
  CHECK(invariance_check(2.0, 0.0, zero).max_error() < 1e-9);
  CHECK(invariance_check(2.0, -1.0, th).max_error() < 1e-9);
}

}
