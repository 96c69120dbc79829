#include <doctest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "qdot/hardy.hpp"

using namespace qdot;
using std::numbers::pi;

namespace {

// ||f||_{A4}^4 with normalized area measure, by Gauss-Legendre in r and
// trapezoid in t.
double a4_quadrature(const TaylorSeries& f) {
  const int T = 128;
  auto ring = [&](double r) {
    double s = 0.0;
    for (int j = 0; j < T; ++j) s += std::pow(std::abs(f(std::polar(r, 2 * pi * j / T))), 4);
    return s / T * 2 * pi * r;
  };
  return boost::math::quadrature::gauss<double, 30>::integrate(ring, 0.0, 1.0) / pi;
}

}  // namespace

TEST_SUITE("hardy") {

TEST_CASE("extremal family has zero gap") {
  for (cplx c2 : {cplx(0.0), cplx(0.5), cplx(0.0, 0.3), cplx(-0.7, 0.2)})
    for (cplx c1 : {cplx(1.0), cplx(2.0, -1.0)})
      CHECK(std::abs(vukotic_gap(TaylorSeries::geometric(c1, c2, 200))) < 1e-12);
}

TEST_CASE("f = z") {
  CHECK(std::abs(vukotic_gap(TaylorSeries::polynomial({0.0, 1.0})) - (1.0 - std::pow(3.0, -0.25))) < 1e-12);
  const Norms n = norms(TaylorSeries::polynomial({0.0, 1.0}));
  CHECK(n.H2 == doctest::Approx(1.0));
  CHECK(n.A2 == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("A4 by convolution against 2-D quadrature") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<cplx> a(11);
    for (auto& c : a) c = {g(rng), g(rng)};
    const TaylorSeries f = TaylorSeries::polynomial(a);
    const double conv = std::pow(norms(f).A4, 4);
    CHECK(std::abs(conv - a4_quadrature(f)) < 1e-8 * conv);
    CHECK(vukotic_gap(f) > 0.0);
  }
}

TEST_CASE("integral means") {
  const TaylorSeries f = TaylorSeries::polynomial({1.0, cplx(0.0, 2.0), -0.5, 0.25});
  for (double r : {0.3, 0.8, 1.0})
    CHECK(m2_series(f, r) == doctest::Approx(m2_quadrature(f, r, 64)).epsilon(1e-13));
}

TEST_CASE("Cauchy product") {
  const auto p = cauchy_product({1.0, 1.0}, {1.0, -1.0}, 3);
  REQUIRE(p.size() == 4);
  CHECK(std::abs(p[0] - 1.0) < 1e-15);
  CHECK(std::abs(p[1]) < 1e-15);
  CHECK(std::abs(p[2] + 1.0) < 1e-15);
  CHECK(std::abs(p[3]) < 1e-15);
}

TEST_CASE("pullback identity for Mobius maps") {
  for (double c2 : {0.0, 0.3, 0.6})
    for (int deg : {0, 1}) {
      std::vector<cplx> u(deg + 1, 0.0);
      u[deg] = 1.0;
      const PullbackResult r = pullback_identity(u, MobiusMap(c2, 1.0, 0.0));
      CHECK(r.defect < 1e-8 + r.tail);
      CHECK(r.lhs > 0.0);
    }
  const PullbackResult r = pullback_identity({0.5, cplx(0, 1), 0.25}, MobiusMap(cplx(0.2, -0.4), cplx(1.5, 0.5), cplx(0.3, 0.1)));
  CHECK(r.defect < 1e-8 + r.tail);
}

TEST_CASE("Mobius validation") {
  CHECK_THROWS(MobiusMap(1.0, 1.0, 0.0));
  CHECK_THROWS(MobiusMap(0.1, 0.0, 0.0));
  const MobiusMap F(0.3, 2.0, 1.0);
  const cplx z(0.2, 0.1);
  const double h = 1e-6;
  CHECK(std::abs((F(z + h) - F(z - h)) / (2 * h) - F.derivative(z)) < 1e-8);
}

TEST_CASE("CSV") {
  const auto csv = hardy_to_csv({{"z", norms(TaylorSeries::polynomial({0.0, 1.0})), 0.0}});
  CHECK(csv.rfind("case,H2,A2,A4,gap\n", 0) == 0);
}

}
