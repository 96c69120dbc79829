#pragma once

#include <string>
#include <vector>

#include "qdot/geometry.hpp"

namespace qdot {

// Truncated power series sum_{n<=N} a_n z^n on the unit disk. `tail` bounds
// the H^2 norm of the discarded remainder; `truncated` is set when the
// remainder is unknown (tail then carries no information).
struct TaylorSeries {
  std::vector<cplx> a;
  double tail = 0.0;
  bool truncated = false;

  int degree() const { return static_cast<int>(a.size()) - 1; }
  cplx operator()(cplx z) const;

  static TaylorSeries polynomial(std::vector<cplx> coeffs);
  // a_n = c1 c2^n, n = 0..N, |c2| < 1, with the exact geometric tail.
  static TaylorSeries geometric(cplx c1, cplx c2, int N);
};

// Cauchy product truncated at degree N.
std::vector<cplx> cauchy_product(const std::vector<cplx>& f, const std::vector<cplx>& g, int N);

struct Norms {
  double H2 = 0.0;
  double A2 = 0.0;
  double A4 = 0.0;
  double tail = 0.0;  // each norm of the full series is within `tail` of the value
};

// ||f||_{H2}^2 = sum |a_n|^2, ||f||_{A2}^2 = sum |a_n|^2/(n+1),
// ||f||_{A4}^4 = ||f^2||_{A2}^2 with f^2 by convolution (normalized area measure).
Norms norms(const TaylorSeries& f);

// ||f||_{H2} - ||f||_{A4}.
double vukotic_gap(const TaylorSeries& f);

// M_2(r, f)^2 = (1/2pi) int |f(r e^{it})|^2 dt, by series and by quadrature.
double m2_series(const TaylorSeries& f, double r);
double m2_quadrature(const TaylorSeries& f, double r, int nodes);

// F(z) = c4 z / (1 - c2 z) + c5, |c2| < 1, c4 != 0; maps the unit disk onto a disk.
struct MobiusMap {
  cplx c2{};
  cplx c4{1.0, 0.0};
  cplx c5{};

  MobiusMap() = default;
  MobiusMap(cplx c2_, cplx c4_, cplx c5_);
  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;  // c4 / (1 - c2 z)^2
};

struct PullbackResult {
  double lhs = 0.0;     // sqrt(2 pi) ||f||_{H2}, f = u(F) (F')^{1/2}
  double rhs = 0.0;     // ||u||_{L2(F(dD))}
  double defect = 0.0;  // |lhs - rhs|
  double tail = 0.0;    // bound on |lhs - sqrt(2 pi) ||f_full||_{H2}|
  TaylorSeries f;
};

// u is a polynomial in the image variable w. (F')^{1/2} = sqrt(c4) / (1 - c2 z)
// with the principal square root of c4.
PullbackResult pullback_identity(const std::vector<cplx>& u, const MobiusMap& map,
                                 int N = 200, int nodes = 1024);

// CSV `case,H2,A2,A4,gap`.
struct HardyRow {
  std::string name;
  Norms n;
  double gap = 0.0;
};
std::string hardy_to_csv(const std::vector<HardyRow>& rows);

}  // namespace qdot
