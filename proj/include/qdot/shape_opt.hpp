#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdot/geometry.hpp"
#include "qdot/mps.hpp"

namespace qdot {

enum class Verdict { pass, inconclusive, fail };

const char* verdict_name(Verdict v);
Verdict classify(double margin, double tol);

struct SweepConfig {
  MpsConfig mps;
  double disk_radius = 2.0;  // reference disk; domains must share its area
  int bergman_N = 30;
  int bergman_M = 512;
  double tol = 1e-7;
};

struct SweepPoint {
  double param = 0.0;
  double omega = 0.0;
  double disk = 0.0;
  double margin = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

// Regime diagnostics. For mu sweeps: Lambda_Omega - Lambda_D against the
// margin at the largest a, and S_Omega - 2 sqrt(pi/|Omega|) against margin/a
// at the smallest a. For lambda sweeps: sqrt(Lambda_Omega + m^2) -
// sqrt(Lambda_D + m^2) against the margin at the smallest theta.
struct Asymptotics {
  double S_omega = 0.0;
  double carleman_bound = 0.0;
  double Lambda_omega = 0.0;
  double Lambda_disk = 0.0;
  double slope_margin = 0.0;          // margin / a at the smallest a (mu sweeps)
  double large_end_reference = 0.0;
  double small_end_reference = 0.0;
  bool large_end_consistent = false;
  bool small_end_consistent = false;
};

struct SweepReport {
  std::string domain;
  std::string quantity;  // "mu" or "lambda"
  double m = 0.0;
  double area = 0.0;
  std::vector<SweepPoint> points;
  Asymptotics asym;

  bool all(Verdict v) const;
  bool any(Verdict v) const;
};

// Throws std::invalid_argument("area mismatch") unless |Omega| equals the
// reference disk area to relative 1e-10.
void check_area_match(const BoundaryCurve& domain, double disk_radius);

SweepReport fk_sweep_mu(const std::string& id, const BoundaryCurve& domain,
                        std::span<const double> a_grid, const SweepConfig& cfg);
SweepReport fk_sweep_lambda(const std::string& id, const BoundaryCurve& domain, double m,
                            std::span<const double> theta_grid, const SweepConfig& cfg);

// Same sweep rerun with K + 8, doubled M; true if no verdict flips.
bool verdicts_stable(const SweepReport& base, const SweepReport& refined);

std::string sweep_to_csv(const std::vector<SweepReport>& reports);
std::string sweep_summary(const SweepReport& r);

struct TransferReport {
  double theta = 0.0;
  double m = 0.0;
  double lambda_disk = 0.0;
  double a = 0.0;                  // a from the Omega inverse (transfer_a)
  double mu_margin = 0.0;          // mu_Omega(a) - mu_D(a)
  double lambda_margin = 0.0;      // lambda_Omega(theta) - lambda_D(theta)
  double theta_back = 0.0;         // theta from the Omega inverse (transfer_theta) at a
  double lambda_margin_back = 0.0; // lambda_Omega(theta_back) - lambda_D(theta_back)
  Verdict mu_verdict = Verdict::inconclusive;
  Verdict lambda_verdict = Verdict::inconclusive;
  Verdict lambda_back_verdict = Verdict::inconclusive;
  double residual_a = 0.0;
  double residual_theta = 0.0;
  // mu-pass implies lambda-pass; lambda-pass at theta_back implies mu-pass.
  bool consistent = false;
  std::string inverse_domain;  // whose inverse map produced a and theta_back
};

TransferReport transfer_roundtrip(const std::string& id, const BoundaryCurve& domain,
                                  double theta, double m, const SweepConfig& cfg);

struct NegMassReport {
  double m = 0.0;
  double S = 0.0;
  double theta_star = 0.0;
  double lower_bound = 0.0;
  double gap = 0.0;               // theta_star - lower_bound
  double vartheta_star = 0.0;     // vartheta(theta_star)
  double rayleigh_value = 0.0;    // 2|m| int_Omega |u|^2 / int_dOmega |u|^2 by direct quadrature
  double identity_defect = 0.0;   // |vartheta_star - rayleigh_value|
  double mirror = 0.0;            // pi - vartheta^{-1}(2|m|/S) for mass +|m|
};

NegMassReport neg_mass_report(const BoundaryCurve& domain, double m, int N = 30, int M = 512);

struct InvarianceSample {
  double theta = 0.0;
  double charge_error = 0.0;  // spectra at (theta, m) vs negated spectra at (-theta, m)
  double chiral_error = 0.0;  // spectra at (theta, m) vs negated spectra at (pi - theta, -m)
  double branch_error = 0.0;  // matched branch indices (k, n) <-> (-k-1, n) and (k, n)
};

struct InvarianceReport {
  double R = 0.0;
  double m = 0.0;
  std::vector<InvarianceSample> samples;
  double max_error() const;
};

InvarianceReport invariance_check(double R, double m, std::span<const double> thetas,
                                  int count = 5);

}  // namespace qdot
