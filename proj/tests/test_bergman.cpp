#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qdot/bergman.hpp"
#include "qdot/geometry.hpp"
#include "qdot/mps.hpp"

using namespace qdot;
using std::numbers::pi;

namespace {

BoundaryCurve ellipse4pi() { return BoundaryCurve::ellipse(2.0 * std::sqrt(2.0), std::sqrt(2.0)); }

}  // namespace

TEST_SUITE("bergman") {

TEST_CASE("disk S equals 2/R") {
  for (double R : {0.5, 2.0, 3.0}) {
    CHECK(std::abs(s_omega(BoundaryCurve::disk(R), 0).S - 2.0 / R) < 1e-14 * (2.0 / R));
    CHECK(std::abs(s_omega(BoundaryCurve::disk(R), 20).S - 2.0 / R) < 1e-10);
  }
}

TEST_CASE("Gram pair is Hermitian and positive") {
  const GramPair g = gram_pair(ellipse4pi(), 12, 512);
  CHECK((g.A - g.A.adjoint()).norm() == 0.0);
  CHECK((g.B - g.B.adjoint()).norm() == 0.0);
  for (int n = 0; n <= 12; ++n) CHECK(g.A(n, n).real() > 0.0);
  CHECK(gram_pair(ellipse4pi(), 12, 512, false).A.isApprox(g.A, 0.0));
}

TEST_CASE("ellipse S: Carleman margin, monotone in N, stabilization, EL residual at the accepted N") {
  double prev = 1e300;
  for (int N = 0; N <= 30; N += 5) {
    const SOmega s = s_omega(ellipse4pi(), N);
    CHECK(s.S <= prev * (1 + 1e-13));
    prev = s.S;
  }
  const SOmega s20 = s_omega(ellipse4pi(), 20);
  const SOmega s25 = s_omega(ellipse4pi(), 25);
  CHECK(s20.S > 1.0);
  CHECK(std::abs(s20.S - s25.S) < 1e-6);
  const SOmega acc = s_omega_converged(ellipse4pi());
  CHECK(acc.N <= 30);
  CHECK(acc.el_residual < 1e-10);
  CHECK(std::abs(acc.S - s25.S) < 1e-6);
  const CarlemanCheck c = carleman_check(ellipse4pi(), 20);
  CHECK(c.bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.margin > 0.04);
}

TEST_CASE("Neville extrapolation reproduces polynomials") {
  const std::vector<double> x{0.1, 0.2, 0.3, 0.4};
  std::vector<double> y;
  for (double t : x) y.push_back(3.0 - 2.0 * t + 0.5 * t * t * t);
  CHECK(neville_at_zero(x, y) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK_THROWS(neville_at_zero({1.0}, {}));
}

TEST_CASE("slope of mu(a)/a on the disk") {
  const MpsSolver s(BoundaryCurve::disk(2.0));
  const SlopeCheck c = slope_check(s, {1e-2, 5e-3, 2.5e-3, 1.25e-3}, 10);
  CHECK(c.S == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.discrepancy < 1e-3);
  CHECK_THROWS(slope_check(s, {0.5}, 10));
}

TEST_CASE("cos3 S stabilizes above the Carleman bound") {
  const BoundaryCurve c = normalize_area(BoundaryCurve::radial_fourier(1.0, {0.0, 0.0, 0.1}, {}), 4 * pi);
  const SOmega s = s_omega_converged(c);
  CHECK(s.S > 1.0);
  CHECK(s.el_residual < 1e-10);
}

TEST_CASE("errors and CSV") {
  CHECK_THROWS_AS(s_omega(BoundaryCurve::disk(1.0), 41), std::invalid_argument);
  CHECK_THROWS_AS(s_omega_converged(BoundaryCurve::disk(1.0), 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(s_omega_converged(ellipse4pi(), 5, 5, 1e-15), std::runtime_error);
  const auto csv = carleman_to_csv({carleman_check(BoundaryCurve::disk(2.0), 5)});
  CHECK(csv.rfind("N,S,bound,margin\n", 0) == 0);
}

}
