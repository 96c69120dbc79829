#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

namespace qdot {

// Root of f on [lo, hi] given a sign change; TOMS 748 bracketing.
template <class F>
double solve_bracketed(F&& f, double lo, double hi, double flo, double fhi,
                       int tol_bits = 48) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    std::ostringstream os;
    os << "root localization failed on [" << lo << ", " << hi << "]";
    throw std::runtime_error(os.str());
  }
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(tol_bits), iters);
  return 0.5 * (r.first + r.second);
}

template <class F>
double solve_bracketed(F&& f, double lo, double hi, int tol_bits = 48) {
  return solve_bracketed(f, lo, hi, f(lo), f(hi), tol_bits);
}

struct Minimum {
  double x = 0.0;
  double fx = 0.0;
  int evaluations = 0;
};

// Brent's localmin (golden section with parabolic steps) on [lo, hi].
// `rel_tol` is relative to |x|; `abs_tol` guards x near zero.
template <class F>
Minimum minimize_unimodal(F&& f, double lo, double hi, double rel_tol = 1e-14,
                          double abs_tol = 1e-300, int max_iter = 200) {
  constexpr double c = 0.3819660112501051;  // (3 - sqrt 5) / 2
  double a = lo, b = hi;
  double v = a + c * (b - a), w = v, x = v;
  double e = 0.0, d = 0.0;
  double fx = f(x), fv = fx, fw = fx;
  int evals = 1;
  for (int iter = 0; iter < max_iter; ++iter) {
    const double m = 0.5 * (a + b);
    const double tol = rel_tol * std::abs(x) + abs_tol;
    const double t2 = 2.0 * tol;
    if (std::abs(x - m) <= t2 - 0.5 * (b - a)) break;
    double p = 0.0, q = 0.0, r = 0.0;
    if (std::abs(e) > tol) {
      r = (x - w) * (fx - fv);
      q = (x - v) * (fx - fw);
      p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      r = e;
      e = d;
    }
    if (std::abs(p) < std::abs(0.5 * q * r) && p > q * (a - x) && p < q * (b - x)) {
      d = p / q;
      const double u = x + d;
      if (u - a < t2 || b - u < t2) d = (x < m) ? tol : -tol;
    } else {
      e = (x < m) ? b - x : a - x;
      d = c * e;
    }
    const double u = x + (std::abs(d) >= tol ? d : (d > 0.0 ? tol : -tol));
    const double fu = f(u);
    ++evals;
    if (fu <= fx) {
      if (u < x) b = x; else a = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx, evals};
}

}  // namespace qdot
