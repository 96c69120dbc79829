#include "qdot/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdot {

namespace {

constexpr double kSeriesCutoff = 2.0;
constexpr double kBig = 1.0e250;

// Ascending series, all orders. Terms shrink monotonically for x <= 2.
void series_all(double x, std::span<double> out) {
  const double q = -0.25 * x * x;
  double lead = 1.0;  // (x/2)^k / k!
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (k > 0) lead *= 0.5 * x / static_cast<double>(k);
    double term = lead, sum = lead;
    for (int m = 1; m < 200; ++m) {
      term *= q / (static_cast<double>(m) * static_cast<double>(m + static_cast<int>(k)));
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    out[k] = sum;
  }
}

// Miller backward recurrence normalized by J_0 + 2 sum_k J_{2k} = 1.
void miller_all(double x, std::span<double> out) {
  const int n = static_cast<int>(out.size()) - 1;
  const double top = std::max(static_cast<double>(n), x);
  int start = static_cast<int>(top + 20.0 + std::sqrt(60.0 * top));
  start += start % 2;
  std::fill(out.begin(), out.end(), 0.0);
  const double two_over_x = 2.0 / x;
  double next = 0.0, cur = 1.0e-30;
  // Kahan-compensated normalization sum.
  double sum = 0.0, comp = 0.0;
  auto accumulate = [&](double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  for (int k = start; k >= 1; --k) {
    // cur = J_k (unnormalized), next = J_{k+1}
    if (k <= n) out[k] = cur;
    if (k % 2 == 0) accumulate(2.0 * cur);
    const double prev = static_cast<double>(k) * two_over_x * cur - next;
    next = cur;
    cur = prev;
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      next /= kBig;
      sum /= kBig;
      comp /= kBig;
      for (int i = k; i <= n; ++i) out[i] /= kBig;
    }
  }
  out[0] = cur;
  accumulate(cur);
  const double scale = 1.0 / sum;
  for (double& v : out) v *= scale;
}

double bessel_single(int k, double x) {
  const int order = std::abs(k);
  std::vector<double> buf(order + 1);
  bessel_j_all(x, buf);
  const double v = buf[order];
  return (k < 0 && (order % 2 == 1)) ? -v : v;
}

}  // namespace

void bessel_j_all(double x, std::span<double> out) {
  if (out.empty()) return;
  if (out.size() > 400 || !(x >= 0.0) || x > kMaxBesselArgument)
    throw std::domain_error("unsupported range");
  if (x == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    out[0] = 1.0;
    return;
  }
  if (x <= kSeriesCutoff)
    series_all(x, out);
  else
    miller_all(x, out);
}

BesselEval bessel_j(int k, double x) {
  if (std::abs(k) > kMaxBesselOrder || !(x >= 0.0) || x > kMaxBesselArgument)
    throw std::domain_error("unsupported range");
  const int order = std::abs(k);
  std::vector<double> buf(order + 2);
  bessel_j_all(x, buf);
  auto signed_j = [&](int q) {
    const int a = std::abs(q);
    const double v = buf[a];
    return (q < 0 && (a % 2 == 1)) ? -v : v;
  };
  BesselEval e;
  e.order = k;
  e.x = x;
  e.value = signed_j(k);
  e.derivative = 0.5 * (signed_j(k - 1) - signed_j(k + 1));
  return e;
}

std::vector<double> bessel_zeros(int k, int count) {
  if (k < 0) throw std::domain_error("unsupported range");
  std::vector<double> zeros;
  zeros.reserve(count);
  // No zeros of J_k in (0, k]; spacing between zeros exceeds 2.4.
  const double step = 0.25;
  double a = std::max(static_cast<double>(k), 0.5);
  double fa = bessel_single(k, a);
  while (static_cast<int>(zeros.size()) < count) {
    const double b = a + step;
    if (b > kMaxBesselArgument) throw std::domain_error("unsupported range");
    const double fb = bessel_single(k, b);
    if (fa == 0.0) {
      zeros.push_back(a);
    } else if (fa * fb < 0.0) {
      double lo = a, hi = b, flo = fa;
      while (hi - lo > 1e-6 * hi) {
        const double mid = 0.5 * (lo + hi);
        const double fm = bessel_single(k, mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      double x = 0.5 * (lo + hi);
      for (int it = 0; it < 20; ++it) {
        std::vector<double> buf(k + 2);
        bessel_j_all(x, buf);
        const double deriv = k == 0 ? -buf[1] : 0.5 * (buf[k - 1] - buf[k + 1]);
        double nx = x - buf[k] / deriv;
        if (nx <= a || nx >= b) nx = 0.5 * (lo + hi);
        const double dx = nx - x;
        x = nx;
        if (std::abs(dx) < 1e-15 * x) break;
      }
      zeros.push_back(x);
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

double bessel_zero(int k, int n) {
  if (k < 0 || k > kMaxBesselOrder || n < 1 || n > 20)
    throw std::domain_error("unsupported range");
  return bessel_zeros(k, n).back();
}

}  // namespace qdot
