#include "pdlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace pdlab {

PdParams PdParams::two_param(double alpha, double theta) {
  if (!std::isfinite(alpha) || !std::isfinite(theta))
    throw DomainError("PdParams: non-finite parameter");
  if (alpha < 0.0 || alpha >= 1.0)
    throw DomainError("PdParams: two-parameter regime needs 0 <= alpha < 1, got alpha=" +
                      std::to_string(alpha));
  if (!(theta > -alpha))
    throw DomainError("PdParams: two-parameter regime needs theta > -alpha, got theta=" +
                      std::to_string(theta));
  return PdParams(alpha, theta, Regime::TwoParam, 0);
}

PdParams PdParams::finite(double kappa, int m) {
  if (!std::isfinite(kappa) || !(kappa > 0.0))
    throw DomainError("PdParams: finite case needs kappa > 0");
  if (m < 2) throw DomainError("PdParams: finite case needs m >= 2, got " + std::to_string(m));
  return PdParams(-kappa, m * kappa, Regime::FiniteCase, m);
}

PdParams PdParams::make(double alpha, double theta) {
  if (!(alpha < 0.0)) return two_param(alpha, theta);
  const double kappa = -alpha;
  const double ratio = theta / kappa;
  const double m = std::round(ratio);
  if (m < 2.0 || std::abs(ratio - m) > 1e-9 * std::max(1.0, m))
    throw DomainError("PdParams: alpha < 0 requires theta = m * (-alpha) with integer m >= 2");
  return finite(kappa, static_cast<int>(m));
}

std::string PdParams::describe() const {
  std::ostringstream os;
  os << "alpha=" << alpha_ << " theta=" << theta_;
  if (is_finite()) os << " (finite, m=" << m_ << ")";
  return os.str();
}

RankedWeights RankedWeights::make(std::vector<double> weights, double residual) {
  std::sort(weights.begin(), weights.end(), std::greater<>());
  RankedWeights out{std::move(weights), residual};
  out.validate();
  return out;
}

RankedWeights RankedWeights::from_weights(std::vector<double> weights) {
  std::sort(weights.begin(), weights.end(), std::greater<>());
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  RankedWeights out{std::move(weights), std::max(0.0, 1.0 - sum)};
  out.validate();
  return out;
}

void RankedWeights::validate(double tol) const {
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) throw DomainError("RankedWeights: negative or NaN weight");
    if (i + 1 < weights.size() && weights[i] < weights[i + 1])
      throw DomainError("RankedWeights: weights not descending");
  }
  if (!(residual >= 0.0)) throw DomainError("RankedWeights: negative residual");
  if (std::abs(total() - 1.0) > tol)
    throw DomainError("RankedWeights: weights + residual != 1");
}

double RankedWeights::total() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0) + residual;
}

double RankedWeights::power_sum(int m) const {
  double s = 0.0;
  for (double w : weights) s += std::pow(w, m);
  return s;
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("log_gamma: argument must be a positive finite real");
  return boost::math::lgamma(x);
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw DomainError("regularized_incomplete_beta: shapes must be positive");
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("regularized_incomplete_beta: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

double dickman_two_param(const PdParams& params, double theta_eff, double s) {
  if (params.is_finite())
    throw UnsupportedRegime("dickman_two_param: two-parameter regime only");
  if (!(s >= 0.0)) throw DomainError("dickman_two_param: s must be non-negative");
  const double alpha = params.alpha();
  if (!(theta_eff > -alpha)) throw DomainError("dickman_two_param: theta_eff must exceed -alpha");
  if (s <= 1.0) return 1.0;
  if (std::isinf(s)) return 0.0;
  return regularized_incomplete_beta(1.0 - alpha, theta_eff + alpha, 1.0 / s);
}

double log_rising(double base, int count) {
  double s = 0.0;
  for (int j = 0; j < count; ++j) s += std::log(base + j);
  return s;
}

}  // namespace pdlab
