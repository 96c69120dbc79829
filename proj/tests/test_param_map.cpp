#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qdot/param_map.hpp"

using namespace qdot;
using std::numbers::pi;

TEST_SUITE("param_map") {

TEST_CASE("vartheta") {
  CHECK(vartheta(0.0) == doctest::Approx(1.0));
  CHECK(vartheta(-1.0) > vartheta(0.0));
  CHECK(vartheta(1.0) < vartheta(0.0));
  for (double th : {-1.5, -0.3, 0.0, 0.9, 1.5})
    CHECK(vartheta_inv(vartheta(th)) == doctest::Approx(th).epsilon(1e-14));
  CHECK_THROWS_AS(vartheta(pi / 2), std::domain_error);
  CHECK_THROWS_AS(vartheta(-pi / 2 - 0.1), std::domain_error);
  CHECK_THROWS_AS(vartheta_inv(0.0), std::domain_error);
}

TEST_CASE("t_map round trip") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> th(-1.5, 1.5), mm(-2.0, 2.0), ex(1e-3, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double m = mm(rng);
    const double theta = th(rng);
    const double lambda = std::abs(m) + ex(rng);
    const RobinParams r = t_map(theta, lambda, m);
    CHECK(r.a > 0.0);
    CHECK(r.mu == doctest::Approx(lambda * lambda - m * m).epsilon(1e-13));
    const DiracParams d = t_inv(r.a, r.mu, m);
    CHECK(std::abs(d.theta - theta) < 1e-12);
    CHECK(std::abs(d.lambda - lambda) < 1e-12 * lambda);
  }
  CHECK_THROWS(t_map(0.0, 0.5, 1.0));
}

TEST_CASE("fixed point on a synthetic increasing callback") {
  auto mu_of_a = [](double a) { return 2.0 * a / (1.0 + a); };
  const FixedPoint fp = solve_dirac_fixed_point(mu_of_a, 0.5, 0.2, 0.0, 2.0);
  const double a = (fp.lambda + 0.5) * vartheta(0.2);
  CHECK(fp.mu == doctest::Approx(mu_of_a(a)).epsilon(1e-13));
  CHECK(fp.lambda == doctest::Approx(std::sqrt(fp.mu + 0.25)).epsilon(1e-14));
}

TEST_CASE("negative mass crossing on the unit-slope disk") {
  const NegMassCrossing c = neg_mass_cross(1.0, -1.0, 4 * pi);
  CHECK(c.theta_star == doctest::Approx(pi / 2 - 2 * std::atan(2.0)).epsilon(1e-14));
  REQUIRE(c.lower_bound.has_value());
  CHECK(std::abs(*c.lower_bound - c.theta_star) < 1e-14);
  CHECK(neg_mass_mirror(1.0, 1.0) == doctest::Approx(pi - c.theta_star).epsilon(1e-14));
  CHECK_THROWS(neg_mass_cross(1.0, 1.0));
}

TEST_CASE("transfer maps") {
  MonotoneCallback mu;
  mu.eval = [](double a) { return a / (1.0 + a); };
  mu.domain_lo = 1e-8;
  mu.domain_hi = 1e8;
  mu.increasing = true;
  mu.range_lo = 0.0;
  mu.range_hi = 1.0;
  const TransferResult r = transfer_a(0.3, 0.0, 0.6, mu);
  CHECK(mu.eval(r.value) == doctest::Approx(0.36).epsilon(1e-12));
  CHECK_THROWS_AS(transfer_a(0.3, 0.0, 1.2, mu), std::domain_error);
}

}
