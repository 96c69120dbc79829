#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace qdot {

using cplx = std::complex<double>;

enum class CurveKind { disk, ellipse, radial_fourier };

// Smooth Jordan curve bounding a planar domain. All kinds are star-shaped
// with respect to `center`; the parametrization runs counterclockwise.
//
//   disk:            z(t) = center + radius e^{it}
//   ellipse:         z(t) = center + semi_major cos t + i semi_minor sin t
//   radial_fourier:  z(t) = center + r(t) e^{it},
//                    r(t) = c0 + sum_k (cos_k[k-1] cos kt + sin_k[k-1] sin kt)
class BoundaryCurve {
 public:
  static BoundaryCurve disk(double radius, cplx center = {});
  static BoundaryCurve ellipse(double semi_major, double semi_minor,
                               cplx center = {});
  static BoundaryCurve radial_fourier(double c0, std::vector<double> cos_k,
                                      std::vector<double> sin_k,
                                      cplx center = {});

  CurveKind kind() const { return kind_; }
  cplx center() const { return center_; }
  double radius() const { return radius_; }
  double semi_major() const { return semi_major_; }
  double semi_minor() const { return semi_minor_; }
  double c0() const { return c0_; }
  const std::vector<double>& cos_coeffs() const { return cos_k_; }
  const std::vector<double>& sin_coeffs() const { return sin_k_; }

  // z(t), z'(t), z''(t).
  cplx point(double t) const;
  cplx d1(double t) const;
  cplx d2(double t) const;

  // Same shape dilated by `factor` about the center.
  BoundaryCurve scaled(double factor) const;

  bool is_disk() const { return kind_ == CurveKind::disk; }

 private:
  CurveKind kind_ = CurveKind::disk;
  cplx center_{};
  double radius_ = 1.0;
  double semi_major_ = 0.0;
  double semi_minor_ = 0.0;
  double c0_ = 0.0;
  std::vector<double> cos_k_;
  std::vector<double> sin_k_;

  // r(t) and its first two derivatives for radial parametrizations.
  void radial(double t, double& r, double& dr, double& ddr) const;
};

// Periodic trapezoidal nodes on a boundary curve. tangent = i * normal.
struct QuadratureGrid {
  int size = 0;
  std::vector<double> t;
  std::vector<cplx> z;
  std::vector<cplx> tangent;
  std::vector<cplx> normal;
  std::vector<double> weight;     // arc length |z'(t)| * 2pi/M
  std::vector<double> curvature;  // signed; 1/R on a disk of radius R
  std::vector<cplx> dz;           // z'(t) * 2pi/M, for contour integrals
};

QuadratureGrid build_grid(const BoundaryCurve& curve, int nodes);

struct Measure {
  double area = 0.0;
  double perimeter = 0.0;
};

Measure measure(const BoundaryCurve& curve, int nodes = 512);
Measure measure(const QuadratureGrid& grid);

// Area centroid via  int_Omega z dA = (1/2i) oint |z|^2 dz.
cplx centroid(const QuadratureGrid& grid, double area);

// Distance from `z0` to the nearest boundary node.
double inradius_estimate(const QuadratureGrid& grid, cplx z0);

// int_Omega f dA through the star map z = center + s (z(t) - center):
// Gauss-Legendre in s, trapezoid in t.
double domain_integral(const BoundaryCurve& curve, const std::function<double(cplx)>& f,
                       int nodes = 256);

BoundaryCurve normalize_area(const BoundaryCurve& curve, double target_area,
                             int nodes = 512);

}  // namespace qdot
