#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "pdlab/core.hpp"

namespace pdlab {

// ---------------------------------------------------------------------------
// Quadrature

/// Integral of f over [a, b] when f behaves like (t-a)^(ea-1) at a and like
/// (b-t)^(eb-1) at b (ea, eb > 0; pass 1 for a regular endpoint). Each half
/// is mapped so the singular factor disappears, then integrated by adaptive
/// Gauss-Kronrod. The tolerance is abs_tol * max(1, |integral|), so it is
/// absolute for O(1) results and relative for large ones. Throws NumericError
/// if the error estimate exceeds it.
double integrate_singular(const std::function<double(double)>& f, double a, double b, double ea, double eb,
                          double abs_tol = 1e-8);

// ---------------------------------------------------------------------------
// Two-type labeled model

/// The type space split as {1} with nu0({1}) = p and its complement.
struct TwoTypeParams {
  PdParams params;
  double p;

  /// Needs 0 < alpha < 1, theta >= 0 and 0 < p < 1.
  static TwoTypeParams make(const PdParams& params, double p);
  double pbar() const { return 1.0 - p; }
};

/// Stationary density of Xi({1}): closed form at theta = 0 and the
/// fractional integral theta * int_0^x (x-t)^(theta-1) Dtilde(t) dt for theta > 0.
double two_type_density(const TwoTypeParams& tt, double x);

/// P(Xi({1}) <= x). For theta > 0 this is int_0^x (x-t)^theta Dtilde(t) dt.
double two_type_cdf(const TwoTypeParams& tt, double x);

/// theta > 0 only: the same CDF from the second kernel,
/// int_0^x (x-t)^(theta-1) Delta_theta(t) dt.
double two_type_cdf_delta_form(const TwoTypeParams& tt, double x);

/// Drift of the one-dimensional generator whose diffusion coefficient is
/// x(1-x): closed form at theta = 0, (1/2)[(1-2x) + x(1-x) q'/q] otherwise
/// with q' by central differences.
double two_type_drift(const TwoTypeParams& tt, double x);

/// Kernels behind the theta > 0 density; exposed for tests.
double two_type_dtilde(const TwoTypeParams& tt, double t);
double two_type_delta(const TwoTypeParams& tt, double t);

/// Tabulated drift on a logit grid over [eps, 1-eps] with linear
/// interpolation; beyond the grid the end values are held.
class DriftTable {
 public:
  DriftTable(const TwoTypeParams& tt, double eps = 1e-6, int points = 2001);
  double operator()(double x) const;

 private:
  double u_lo_, u_hi_, du_;
  std::vector<double> values_;
};

// ---------------------------------------------------------------------------
// Ranked marginals

/// G(y) = P(largest atom of PD(alpha, theta) <= y), built from the level
/// recursion G_th(y) = 1 - int_y^1 c1(th) x^(-alpha-1) (1-x)^(th+alpha-1)
/// G_{th+alpha}(x/(1-x)) dx. For y >= 1/2 the inner factor is 1 and the
/// integral is tabulated in u = (1-x)^(th+alpha); below 1/2 each level is
/// tabulated on a uniform grid down to y_min, under which G is taken as 0.
class LargestAtomCdf {
 public:
  LargestAtomCdf(double alpha, double theta, double y_min = 0.005, int cells = 400);
  ~LargestAtomCdf();
  LargestAtomCdf(LargestAtomCdf&&) noexcept;
  LargestAtomCdf& operator=(LargestAtomCdf&&) noexcept;

  double operator()(double y) const;
  double alpha() const noexcept { return alpha_; }
  double theta() const noexcept { return theta_; }

 private:
  struct Level;
  double alpha_, theta_;
  std::vector<std::unique_ptr<Level>> levels_;  // levels_[k] has theta + k alpha
};

/// Generalized Dickman factor rho_{alpha,theta'}(s) = P(s * P1 < 1), P1 the
/// largest atom of PD(alpha, theta'), as it enters the marginal density.
double generalized_dickman(double alpha, double theta_prime, double s);

/// Density of the first n ranked atoms (x_1 >= ... >= x_n) of PD(alpha, theta):
///   c_n x_1^{-alpha-1} ... x_n^{-alpha-1} (1 - sum x)^{theta + n alpha - 1}
///   rho_{alpha, theta + n alpha}((1 - sum x)/x_n).
/// The Dickman table is built once per object.
class MarginalDensity {
 public:
  MarginalDensity(const PdParams& params, int n);
  double operator()(std::span<const double> x) const;
  int n() const noexcept { return n_; }
  double log_normalizer() const noexcept { return log_c_; }

  /// n = 1 only: P(x_1 <= y) = 1 - int_y^1 h.
  double largest_atom_cdf(double y) const;
  /// The same at many points (ascending), integrating between neighbours.
  std::vector<double> largest_atom_cdf_sorted(std::span<const double> ys) const;

 private:
  PdParams params_;
  int n_;
  double log_c_;
  LargestAtomCdf rho_;
};

/// log c_{n, alpha, theta} = sum_i log[Gamma(theta+1+(i-1)alpha) / (Gamma(1-alpha) Gamma(theta+i alpha))].
double log_marginal_normalizer(const PdParams& params, int n);

/// One-shot evaluation; see MarginalDensity.
double marginal_density_h(const PdParams& params, std::span<const double> x);

}  // namespace pdlab
