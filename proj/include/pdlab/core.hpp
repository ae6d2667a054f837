#pragma once

#include <span>
#include <string>
#include <vector>

#include "pdlab/errors.hpp"

namespace pdlab {

// Shared tolerances.
inline constexpr double kAbsTol = 1e-10;       // deterministic identities
inline constexpr double kWeightSumTol = 1e-12; // RankedWeights conservation
inline constexpr double kSignificance = 0.01;  // statistical tests

enum class Regime { TwoParam, FiniteCase };

/// Parameters (alpha, theta) of PD(alpha, theta).
///
/// Two regimes are admitted:
///   TwoParam:   0 <= alpha < 1 and theta > -alpha;
///   FiniteCase: alpha = -kappa < 0 and theta = m * kappa with integer m >= 2,
///               the symmetric Dirichlet(kappa, ..., kappa) law on m atoms.
class PdParams {
 public:
  static PdParams two_param(double alpha, double theta);
  static PdParams finite(double kappa, int m);
  /// Dispatches on the sign of alpha; a negative alpha must satisfy the
  /// finite-case relation theta = m * (-alpha) for an integer m >= 2.
  static PdParams make(double alpha, double theta);

  double alpha() const noexcept { return alpha_; }
  double theta() const noexcept { return theta_; }
  Regime regime() const noexcept { return regime_; }
  bool is_finite() const noexcept { return regime_ == Regime::FiniteCase; }
  /// Number of atoms in the finite case; 0 for TwoParam.
  int finite_m() const noexcept { return m_; }
  double kappa() const noexcept { return -alpha_; }

  std::string describe() const;

  friend bool operator==(const PdParams&, const PdParams&) = default;

 private:
  PdParams(double alpha, double theta, Regime regime, int m)
      : alpha_(alpha), theta_(theta), regime_(regime), m_(m) {}

  double alpha_;
  double theta_;
  Regime regime_;
  int m_;
};

/// A point of the closed ranked simplex: descending atom masses plus the
/// unallocated "dust" mass 1 - sum(weights).
struct RankedWeights {
  std::vector<double> weights;
  double residual = 0.0;

  /// Sorts the weights descending and checks every invariant.
  static RankedWeights make(std::vector<double> weights, double residual);
  /// Sorts and sets residual = 1 - sum(weights), clamped at zero.
  static RankedWeights from_weights(std::vector<double> weights);

  void validate(double tol = kWeightSumTol) const;
  double total() const;
  /// phi_m = sum_i w_i^m over the atoms (the residual carries no atoms).
  double power_sum(int m) const;
};

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Regularized incomplete beta I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

/// P(s * V1 < 1) with V1 ~ Beta(1 - alpha, theta_eff + alpha), the first GEM
/// stick of PD(alpha, theta_eff).
double dickman_two_param(const PdParams& params, double theta_eff, double s);

/// Sum of log(base + j) for j = 0..count-1, i.e. the log of a rising factorial.
double log_rising(double base, int count);

}  // namespace pdlab
