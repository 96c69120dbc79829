#pragma once

#include <span>
#include <vector>

namespace qdot {

inline constexpr int kMaxBesselOrder = 60;
inline constexpr double kMaxBesselArgument = 1.0e3;

struct BesselEval {
  int order = 0;
  double x = 0.0;
  double value = 0.0;       // J_k(x)
  double derivative = 0.0;  // J_k'(x) = (J_{k-1}(x) - J_{k+1}(x)) / 2
};

// Integer-order Bessel function of the first kind for |k| <= 60, 0 <= x <= 1e3.
// Throws std::domain_error("unsupported range") outside that box.
BesselEval bessel_j(int k, double x);

// Fills out[k] = J_k(x) for k = 0 .. out.size()-1 in one backward sweep.
// Used by the solvers, which need every order at each node. No range check
// on the order beyond out.size() <= 400.
void bessel_j_all(double x, std::span<double> out);

// n-th positive zero j_{k,n} of J_k (k <= 60, n <= 20 through the checked
// entry point; bessel_zeros accepts any count the scan can reach).
double bessel_zero(int k, int n);
std::vector<double> bessel_zeros(int k, int count);

}  // namespace qdot
