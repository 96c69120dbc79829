#include "qdot/disk_spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qdot/parallel.hpp"
#include "qdot/param_map.hpp"
#include "qdot/roots.hpp"
#include "qdot/special.hpp"

namespace qdot {

namespace {

constexpr int kMaxDiskOrder = 40;
constexpr int kMaxRadial = 20;
constexpr int kMaxSpectrumOrder = 40;

// j_{k,n} for k = 0..41, n = 1..21; computed once.
const std::vector<std::vector<double>>& zero_table() {
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<double>> t(kMaxDiskOrder + 2);
    for (int k = 0; k <= kMaxDiskOrder + 1; ++k) t[k] = bessel_zeros(k, kMaxRadial + 1);
    return t;
  }();
  return table;
}

double jzero(int k, int n) {
  if (n == 0) return 0.0;
  return zero_table()[k][n - 1];
}

void check_disk_args(double R, int k, int n_max) {
  if (!(R > 0.0)) throw std::invalid_argument("disk radius must be positive");
  if (std::abs(k) > kMaxDiskOrder) throw std::invalid_argument("angular index out of range (|k| <= 40)");
  if (n_max < 1 || n_max > kMaxRadial) throw std::invalid_argument("radial index out of range (1..20)");
}

// x-bracket of the n-th Robin root for angular index k.
std::array<double, 2> robin_bracket(int k, int n) {
  if (k >= 0) return {jzero(k + 1, n - 1), jzero(k, n)};
  const int p = -k;
  return {jzero(p - 1, n), jzero(p, n)};
}

// q(x) = aR - x J_{k+1}/J_k (k >= 0) or aR + x J_{p-1}/J_p (k = -p).
// Continuous and decreasing on the bracket, equal to aR at its left end.
double robin_q(double aR, int k, double x) {
  const int p = std::abs(k);
  std::array<double, kMaxDiskOrder + 2> buf{};
  bessel_j_all(x, std::span<double>(buf.data(), static_cast<std::size_t>(p + 2)));
  if (k >= 0) return aR - x * buf[p + 1] / buf[p];
  return aR + x * buf[p - 1] / buf[p];
}

double robin_root(double R, double a, int k, int n) {
  const auto [lo, hi] = robin_bracket(k, n);
  const double aR = a * R;
  const double hi_in = hi * (1.0 - 1e-13);
  const double fhi = robin_q(aR, k, hi_in);
  if (!(fhi < 0.0)) {
    std::ostringstream os;
    os << "root localization failed on [" << lo << ", " << hi << "]";
    throw std::runtime_error(os.str());
  }
  return solve_bracketed([&](double x) { return robin_q(aR, k, x); }, lo, hi_in, aR, fhi, 52);
}

double signed_j(const std::vector<double>& buf, int k) {
  const int p = std::abs(k);
  return (k < 0 && (p % 2 == 1)) ? -buf[p] : buf[p];
}

// General (possibly negative) vartheta; requires cos(theta) != 0.
double vartheta_general(double theta) {
  const double c = std::cos(theta);
  if (std::abs(c) < 1e-14) throw std::domain_error("zigzag excluded: use zigzag_levels");
  return (1.0 - std::sin(theta)) / c;
}

struct LevelProblem {
  double R, m, vt;
  int sign;
  double lambda(double x) const {
    return sign * std::sqrt(x * x / (R * R) + m * m);
  }
  // G(x) / (|J_k| + |J_{k+1}|): same sign as G, bounded magnitude.
  double eval(const std::vector<double>& buf, int k, double x) const {
    const double jk = signed_j(buf, k), jk1 = signed_j(buf, k + 1);
    const double g = (lambda(x) + m) * vt * R * jk - x * jk1;
    return g / (std::abs(jk) + std::abs(jk1));
  }
};

constexpr double kScanStep = 0.01;
constexpr double kScanStart = 1e-6;

// All levels for k_lo <= k <= k_hi with x in (0, x_max), one pass over x.
std::vector<std::vector<DiracLevel>> scan_levels(const LevelProblem& pb, int k_lo,
                                                 int k_hi, double x_max) {
  const int p_max = std::max(std::abs(k_lo), std::abs(k_hi + 1));
  std::vector<double> buf(p_max + 1);
  const int nk = k_hi - k_lo + 1;
  std::vector<std::vector<DiracLevel>> out(nk);
  std::vector<double> prev(nk);
  double x_prev = kScanStart;
  bessel_j_all(x_prev, buf);
  for (int i = 0; i < nk; ++i) prev[i] = pb.eval(buf, k_lo + i, x_prev);
  const int steps = static_cast<int>(std::ceil((x_max - kScanStart) / kScanStep));
  for (int s = 1; s <= steps; ++s) {
    const double x = kScanStart + s * kScanStep;
    bessel_j_all(x, buf);
    for (int i = 0; i < nk; ++i) {
      const int k = k_lo + i;
      const double cur = pb.eval(buf, k, x);
      if ((cur < 0.0) != (prev[i] < 0.0) || cur == 0.0) {
        std::vector<double> b2(p_max + 1);
        auto f = [&](double t) {
          bessel_j_all(t, b2);
          return pb.eval(b2, k, t);
        };
        const double root = cur == 0.0 ? x : solve_bracketed(f, x_prev, x, prev[i], cur, 52);
        DiracLevel lv;
        lv.k = k;
        lv.n = static_cast<int>(out[i].size()) + 1;
        lv.lambda = pb.lambda(root);
        out[i].push_back(lv);
      }
      prev[i] = cur;
    }
    x_prev = x;
  }
  return out;
}

bool above_mass(double lambda, double m) { return std::abs(lambda) > std::abs(m); }

}  // namespace

MuRange robin_branch_range(double R, int k, int n) {
  check_disk_args(R, k, n);
  const auto [lo, hi] = robin_bracket(k, n);
  return {lo * lo / (R * R), hi * hi / (R * R)};
}

std::vector<double> robin_disk_eigs(double R, double a, int k, int n_max) {
  check_disk_args(R, k, n_max);
  if (!(a > 0.0)) throw std::invalid_argument("Robin parameter must be positive");
  std::vector<double> mus;
  mus.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const double x = robin_root(R, a, k, n);
    mus.push_back(x * x / (R * R));
  }
  return mus;
}

double robin_disk_first(double R, double a) {
  double best = robin_disk_eigs(R, a, 0, 1).front();
  for (int K = 1; K <= kMaxDiskOrder; ++K) {
    const double cand = std::min(robin_disk_eigs(R, a, K, 1).front(),
                                 robin_disk_eigs(R, a, -K, 1).front());
    if (cand > 1.1 * best) break;
    best = std::min(best, cand);
  }
  return best;
}

double dirichlet_disk_first(double R) {
  if (!(R > 0.0)) throw std::invalid_argument("disk radius must be positive");
  const double j = jzero(0, 1);
  return j * j / (R * R);
}

double dirac_disk_first(double R, double m, double theta) {
  if (!(R > 0.0)) throw std::invalid_argument("disk radius must be positive");
  if (!(std::abs(theta) < 0.5 * std::numbers::pi))
    throw std::domain_error("zigzag excluded: use zigzag_levels");
  const FixedPoint fp = solve_dirac_fixed_point(
      [R](double a) { return robin_disk_first(R, a); }, m, theta, 0.0,
      dirichlet_disk_first(R));
  return fp.lambda;
}

double dirac_disk_branch(double R, double m, double theta, int k, int n) {
  check_disk_args(R, k, n);
  if (!(std::abs(theta) < 0.5 * std::numbers::pi))
    throw std::domain_error("zigzag excluded: use zigzag_levels");
  const MuRange range = robin_branch_range(R, k, n);
  const FixedPoint fp = solve_dirac_fixed_point(
      [&](double a) {
        const double x = robin_root(R, a, k, n);
        return x * x / (R * R);
      },
      m, theta, range.lo, range.hi);
  return fp.lambda;
}

std::vector<DiracLevel> dirac_disk_levels(double R, double m, double theta, int sign,
                                          int k, double x_max) {
  if (!(R > 0.0)) throw std::invalid_argument("disk radius must be positive");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (std::abs(k) > kMaxSpectrumOrder) throw std::invalid_argument("angular index out of range (|k| <= 40)");
  if (!(x_max > kScanStart) || x_max > kMaxBesselArgument)
    throw std::invalid_argument("scan limit out of range");
  const LevelProblem pb{R, m, vartheta_general(theta), sign};
  auto lv = scan_levels(pb, k, k, x_max);
  return lv.front();
}

std::vector<DiracLevel> dirac_disk_spectrum(double R, double m, double theta, int sign,
                                            int count) {
  if (!(R > 0.0)) throw std::invalid_argument("disk radius must be positive");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (count < 1) throw std::invalid_argument("count must be positive");
  const LevelProblem pb{R, m, vartheta_general(theta), sign};
  double x_max = 12.0;
  for (;;) {
    auto table = scan_levels(pb, -kMaxSpectrumOrder, kMaxSpectrumOrder, x_max);
    std::vector<DiracLevel> all;
    for (auto& row : table)
      for (auto& lv : row)
        if (above_mass(lv.lambda, m)) all.push_back(lv);
    if (static_cast<int>(all.size()) >= count || x_max >= 200.0) {
      std::sort(all.begin(), all.end(), [](const DiracLevel& l, const DiracLevel& r) {
        if (std::abs(l.lambda) != std::abs(r.lambda)) return std::abs(l.lambda) < std::abs(r.lambda);
        if (l.k != r.k) return l.k < r.k;
        return l.n < r.n;
      });
      if (static_cast<int>(all.size()) > count) all.resize(count);
      return all;
    }
    x_max *= 2.0;
  }
}

double ZigzagLevels::first_nonnegative() const {
  double best = std::numeric_limits<double>::infinity();
  if (flat_level >= 0.0) best = flat_level;
  for (double v : positive)
    if (v >= 0.0) best = std::min(best, v);
  return best;
}

ZigzagLevels zigzag_levels(double R, double m, int sign, int count) {
  if (!(R > 0.0)) throw std::invalid_argument("disk radius must be positive");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (count < 1) throw std::invalid_argument("count must be positive");
  // Smallest `count` values of j_{k,n} over k >= 0 (distinct radial profiles).
  std::vector<double> js;
  for (int k = 0; k <= kMaxDiskOrder; ++k)
    for (int n = 1; n <= std::min(count, kMaxRadial); ++n) js.push_back(jzero(k, n));
  std::sort(js.begin(), js.end());
  js.resize(std::min<std::size_t>(js.size(), static_cast<std::size_t>(count)));
  ZigzagLevels z;
  z.flat_level = sign * m;
  for (double j : js) {
    const double v = std::sqrt(j * j / (R * R) + m * m);
    z.positive.push_back(v);
    z.negative.push_back(-v);
  }
  return z;
}

std::vector<DiskBranch> disk_curves(DiskOperator op, double R, double m,
                                    std::span<const double> grid,
                                    const BranchSet& branches) {
  if (grid.empty()) throw std::invalid_argument("empty parameter grid");
  if (branches.k_min > branches.k_max) throw std::invalid_argument("empty order range");
  check_disk_args(R, branches.k_min, branches.n_max);
  check_disk_args(R, branches.k_max, branches.n_max);
  for (double p : grid) {
    if (op == DiskOperator::robin && !(p > 0.0))
      throw std::invalid_argument("Robin grid must be positive");
    if (op == DiskOperator::dirac && !(std::abs(p) < 0.5 * std::numbers::pi))
      throw std::domain_error("zigzag excluded: use zigzag_levels");
  }

  std::vector<DiskBranch> out;
  std::vector<int> signs{1};
  if (op == DiskOperator::dirac && branches.negative) signs.insert(signs.begin(), -1);
  for (int s : signs)
    for (int k = branches.k_min; k <= branches.k_max; ++k)
      for (int n = 1; n <= branches.n_max; ++n) {
        DiskBranch b;
        b.op = op;
        b.k = k;
        b.n = n;
        b.sign = s;
        b.m = m;
        b.params.assign(grid.begin(), grid.end());
        b.values.assign(grid.size(), 0.0);
        out.push_back(std::move(b));
      }

  const int nk = branches.k_max - branches.k_min + 1;
  parallel_for(grid.size(), [&](std::size_t i) {
    const double p = grid[i];
    std::size_t idx = 0;
    for (int s : signs) {
      if (op == DiskOperator::robin) {
        for (int k = branches.k_min; k <= branches.k_max; ++k) {
          auto mus = robin_disk_eigs(R, p, k, branches.n_max);
          for (int n = 0; n < branches.n_max; ++n) out[idx++].values[i] = mus[n];
        }
      } else if (op == DiskOperator::dirichlet) {
        for (int k = branches.k_min; k <= branches.k_max; ++k)
          for (int n = 1; n <= branches.n_max; ++n) {
            const double j = jzero(std::abs(k), n);
            out[idx++].values[i] = j * j / (R * R);
          }
      } else if (s > 0 && m >= 0.0) {
        for (int k = branches.k_min; k <= branches.k_max; ++k)
          for (int n = 1; n <= branches.n_max; ++n)
            out[idx++].values[i] = dirac_disk_branch(R, m, p, k, n);
      } else {
        const LevelProblem pb{R, m, vartheta_general(p), s};
        double x_max = 16.0;
        std::vector<std::vector<DiracLevel>> table;
        for (;;) {
          table = scan_levels(pb, branches.k_min, branches.k_max, x_max);
          // Drop levels at |lambda| <= |m| (x -> 0 artifacts).
          bool enough = true;
          for (auto& row : table) {
            std::erase_if(row, [&](const DiracLevel& lv) {
              return !(above_mass(lv.lambda, m));
            });
            for (std::size_t r = 0; r < row.size(); ++r) row[r].n = static_cast<int>(r) + 1;
            if (static_cast<int>(row.size()) < branches.n_max) enough = false;
          }
          if (enough) break;
          if (x_max > 500.0) throw std::runtime_error("root localization failed: branch scan exhausted");
          x_max *= 2.0;
        }
        for (int kk = 0; kk < nk; ++kk)
          for (int n = 0; n < branches.n_max; ++n) out[idx++].values[i] = table[kk][n].lambda;
      }
    }
  });
  return out;
}

std::string branches_to_csv(const std::vector<DiskBranch>& branches) {
  std::string s = "param,k,n,value\n";
  char line[128];
  for (const auto& b : branches)
    for (std::size_t i = 0; i < b.params.size(); ++i) {
      std::snprintf(line, sizeof line, "%.15g,%d,%d,%.15g\n", b.params[i], b.k, b.n,
                    b.values[i]);
      s += line;
    }
  return s;
}

}  // namespace qdot
