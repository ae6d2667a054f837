#include "pdlab/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/gauss.hpp>

namespace pdlab {

namespace {

constexpr double kPi = std::numbers::pi;

double gk_panel(const std::function<double(double)>& g, double lo, double hi, double tol, int depth, double& err) {
  using boost::math::quadrature::gauss_kronrod;
  const double v = gauss_kronrod<double, 31>::integrate(g, lo, hi, 0);
  const double w = gauss_kronrod<double, 21>::integrate(g, lo, hi, 0);
  const double e = std::abs(v - w);
  if (!(e > tol) || depth == 0) {  // NaN stops here too; the caller rejects it
    err += e;
    return v;
  }
  const double mid = 0.5 * (lo + hi);
  return gk_panel(g, lo, mid, 0.5 * tol, depth - 1, err) + gk_panel(g, mid, hi, 0.5 * tol, depth - 1, err);
}

// Maps [a, b] to [0, 1] so the tolerance refers to the integral itself,
// then bisects wherever GK31 and GK21 disagree. tol is scaled by the size of
// a coarse first estimate when that exceeds one.
double gk(const std::function<double(double)>& f, double a, double b, double& err, double tol) {
  if (!(b > a)) return 0.0;
  const double len = b - a;
  std::function<double(double)> g = [&](double s) { return len * f(a + len * s); };
  const double coarse = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 0);
  return gk_panel(g, 0.0, 1.0, tol * std::max(1.0, std::abs(coarse)), 30, err);
}

}  // namespace

double integrate_singular(const std::function<double(double)>& f, double a, double b, double ea, double eb,
                          double abs_tol) {
  if (!(ea > 0.0) || !(eb > 0.0)) throw DomainError("integrate_singular: exponents must be positive");
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  double err = 0.0;
  double total = 0.0;

  if (ea == 1.0) {
    total += gk(f, a, m, err, 0.25 * abs_tol);
  } else {
    // t = a + v^(1/ea): (t-a)^(ea-1) dt = dv / ea
    auto g = [&](double v) {
      if (v <= 0.0) return 0.0;
      const double d = std::pow(v, 1.0 / ea);
      if (a + d == a) return 0.0;  // below resolution; the mapped integrand is bounded
      return f(a + d) * std::pow(d, 1.0 - ea) / ea;
    };
    total += gk(g, 0.0, std::pow(m - a, ea), err, 0.25 * abs_tol);
  }
  if (eb == 1.0) {
    total += gk(f, m, b, err, 0.25 * abs_tol);
  } else {
    auto g = [&](double w) {
      if (w <= 0.0) return 0.0;
      const double d = std::pow(w, 1.0 / eb);
      if (b - d == b) return 0.0;
      return f(b - d) * std::pow(d, 1.0 - eb) / eb;
    };
    total += gk(g, 0.0, std::pow(b - m, eb), err, 0.25 * abs_tol);
  }
  if (!std::isfinite(total)) throw NumericError("integrate_singular: non-finite result", err);
  if (err > abs_tol * std::max(1.0, std::abs(total))) throw NumericError("integrate_singular: quadrature did not converge", err);
  return total;
}

// ---------------------------------------------------------------------------
// Two-type model

TwoTypeParams TwoTypeParams::make(const PdParams& params, double p) {
  if (params.is_finite() || !(params.alpha() > 0.0))
    throw UnsupportedRegime("two-type model needs 0 < alpha < 1");
  if (params.theta() < 0.0)
    throw UnsupportedRegime("two-type model: theta in (-alpha, 0) is not supported");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("two-type model needs 0 < p < 1");
  return TwoTypeParams{params, p};
}

namespace {

void check_unit(double x, const char* who) {
  if (!(x > 0.0 && x < 1.0)) throw SupportError(std::string(who) + ": x must lie in (0,1)");
}

struct Wparts {
  double g_a, z_a, g_am1, z_am1;
};

// gamma_d(t) = cos(d pi) t^d pbar + (1-t)^d p,  zeta_d(t) = sin(d pi) t^d pbar
Wparts w_parts(const TwoTypeParams& tt, double t) {
  const double a = tt.params.alpha();
  const double pb = tt.pbar();
  const double ta = std::pow(t, a);
  const double sa = std::pow(1.0 - t, a);
  const double ca = std::cos(a * kPi), sn = std::sin(a * kPi);
  // d = a - 1: cos((a-1) pi) = -cos(a pi), sin((a-1) pi) = -sin(a pi)
  return {ca * ta * pb + sa * tt.p, sn * ta * pb, -ca * ta / t * pb + sa / (1.0 - t) * tt.p,
          -sn * ta / t * pb};
}

double theta0_denominator(const TwoTypeParams& tt, double x) {
  const double a = tt.params.alpha();
  const double p = tt.p, pb = tt.pbar();
  const double xa = std::pow(x, a), ya = std::pow(1.0 - x, a);
  return pb * pb * xa * xa + p * p * ya * ya + 2.0 * p * pb * xa * ya * std::cos(a * kPi);
}

double theta0_density(const TwoTypeParams& tt, double x) {
  const double a = tt.params.alpha();
  return tt.p * tt.pbar() * std::sin(a * kPi) * std::pow(x, a - 1.0) * std::pow(1.0 - x, a - 1.0) /
         (kPi * theta0_denominator(tt, x));
}

double theta0_drift(const TwoTypeParams& tt, double x) {
  const double a = tt.params.alpha();
  const double p = tt.p, pb = tt.pbar();
  const double xa = std::pow(x, a), ya = std::pow(1.0 - x, a);
  const double num = 2.0 * pb * pb * xa * xa * (1.0 - x) - 2.0 * p * p * ya * ya * x +
                     2.0 * p * pb * (1.0 - 2.0 * x) * xa * ya * std::cos(a * kPi);
  return 0.5 * a * ((1.0 - 2.0 * x) - num / theta0_denominator(tt, x));
}

}  // namespace

double two_type_dtilde(const TwoTypeParams& tt, double t) {
  const double a = tt.params.alpha();
  const double th = tt.params.theta();
  const Wparts w = w_parts(tt, t);
  const double psi = (th + a) / a * std::atan2(w.z_a, w.g_a);
  const double mod2 = w.g_a * w.g_a + w.z_a * w.z_a;
  return (w.g_am1 * std::sin(psi) - w.z_am1 * std::cos(psi)) / (kPi * std::pow(mod2, (th + a) / (2.0 * a)));
}

double two_type_delta(const TwoTypeParams& tt, double t) {
  const double a = tt.params.alpha();
  const double th = tt.params.theta();
  const Wparts w = w_parts(tt, t);
  const double mod2 = w.g_a * w.g_a + w.z_a * w.z_a;
  return std::sin(th / a * std::atan2(w.z_a, w.g_a)) / (kPi * std::pow(mod2, th / (2.0 * a)));
}

namespace {
TwoTypeParams complement(const TwoTypeParams& tt) { return TwoTypeParams{tt.params, tt.pbar()}; }
}  // namespace

double two_type_density(const TwoTypeParams& tt, double x) {
  check_unit(x, "two_type_density");
  const double th = tt.params.theta();
  if (th == 0.0) return theta0_density(tt, x);
  // 1 - Xi({1}) is the same model with p and pbar swapped; integrating from
  // the nearer end avoids the cancellation in 1 - t.
  if (x > 0.5) return two_type_density(complement(tt), 1.0 - x);
  const double a = tt.params.alpha();
  auto f = [&](double t) { return std::pow(x - t, th - 1.0) * two_type_dtilde(tt, t); };
  return th * integrate_singular(f, 0.0, x, a, th);
}

double two_type_cdf(const TwoTypeParams& tt, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (x > 0.5) return 1.0 - two_type_cdf(complement(tt), 1.0 - x);
  const double a = tt.params.alpha();
  const double th = tt.params.theta();
  if (th == 0.0) {
    auto q = [&](double t) { return theta0_density(tt, t); };
    return integrate_singular(q, 0.0, x, a, 1.0);
  }
  auto f = [&](double t) { return std::pow(x - t, th) * two_type_dtilde(tt, t); };
  return integrate_singular(f, 0.0, x, a, th + 1.0);
}

double two_type_cdf_delta_form(const TwoTypeParams& tt, double x) {
  const double th = tt.params.theta();
  if (!(th > 0.0)) throw UnsupportedRegime("delta-form CDF needs theta > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (x > 0.5) return 1.0 - two_type_cdf_delta_form(complement(tt), 1.0 - x);
  auto f = [&](double t) { return std::pow(x - t, th - 1.0) * two_type_delta(tt, t); };
  return integrate_singular(f, 0.0, x, 1.0, th);
}

double two_type_drift(const TwoTypeParams& tt, double x) {
  check_unit(x, "two_type_drift");
  if (tt.params.theta() == 0.0) return theta0_drift(tt, x);
  // x(1-x) q'/q = d log q / du in the logit coordinate u.
  constexpr double h = 1e-5;
  const double u = std::log(x / (1.0 - x));
  auto at = [&](double v) { return std::log(two_type_density(tt, 1.0 / (1.0 + std::exp(-v)))); };
  const double dlog = (at(u + h) - at(u - h)) / (2.0 * h);
  return 0.5 * ((1.0 - 2.0 * x) + dlog);
}

DriftTable::DriftTable(const TwoTypeParams& tt, double eps, int points) {
  if (!(eps > 0.0 && eps < 0.5) || points < 2) throw DomainError("DriftTable: bad grid");
  u_lo_ = std::log(eps / (1.0 - eps));
  u_hi_ = -u_lo_;
  du_ = (u_hi_ - u_lo_) / (points - 1);
  values_.resize(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double u = u_lo_ + i * du_;
    values_[i] = two_type_drift(tt, 1.0 / (1.0 + std::exp(-u)));
  }
}

double DriftTable::operator()(double x) const {
  const double u = std::log(x / (1.0 - x));
  if (!(u > u_lo_)) return values_.front();
  if (!(u < u_hi_)) return values_.back();
  const double s = (u - u_lo_) / du_;
  const auto i = std::min(static_cast<std::size_t>(s), values_.size() - 2);
  const double f = s - static_cast<double>(i);
  return values_[i] + f * (values_[i + 1] - values_[i]);
}

// ---------------------------------------------------------------------------
// Largest-atom CDF

namespace {

double log_c1(double alpha, double theta) {
  return log_gamma(theta + 1.0) - log_gamma(theta + alpha) - log_gamma(1.0 - alpha);
}

}  // namespace

struct LargestAtomCdf::Level {
  double alpha, theta, b, c1;
  // y >= 1/2, tabulated in u = (1-y)^b on [0, u_half]
  double du;
  std::vector<double> hi;
  // y in [y_min, 1/2]
  bool has_lo = false;
  double y_min = 0.5, dy = 0.0;
  std::vector<double> lo;

  double eval(double y) const {
    if (y >= 1.0) return 1.0;
    if (y >= 0.5) {
      const double u = std::pow(1.0 - y, b);
      const double s = u / du;
      const auto i = std::min(static_cast<std::size_t>(s), hi.size() - 2);
      const double f = s - static_cast<double>(i);
      return hi[i] + f * (hi[i + 1] - hi[i]);
    }
    if (!has_lo || y < y_min) return 0.0;
    const double s = (y - y_min) / dy;
    const auto i = std::min(static_cast<std::size_t>(s), lo.size() - 2);
    const double f = s - static_cast<double>(i);
    return lo[i] + f * (lo[i + 1] - lo[i]);
  }
};

LargestAtomCdf::LargestAtomCdf(double alpha, double theta, double y_min, int cells)
    : alpha_(alpha), theta_(theta) {
  if (!(alpha >= 0.0 && alpha < 1.0) || !(theta > -alpha))
    throw DomainError("LargestAtomCdf: needs 0 <= alpha < 1 and theta > -alpha");
  if (!(y_min > 0.0 && y_min < 0.5) || cells < 2) throw DomainError("LargestAtomCdf: bad grid");

  std::vector<double> mins;
  for (double y = y_min; y < 0.5; y = y / (1.0 - y)) mins.push_back(y);
  const std::size_t depth = mins.size();  // levels 0..depth, the last one without a low table
  levels_.resize(depth + 1);

  using GL = boost::math::quadrature::gauss<double, 8>;
  for (std::size_t k = depth + 1; k-- > 0;) {
    auto lev = std::make_unique<Level>();
    lev->alpha = alpha;
    lev->theta = theta + static_cast<double>(k) * alpha;
    lev->b = lev->theta + alpha;
    lev->c1 = std::exp(log_c1(alpha, lev->theta));

    const double u_half = std::pow(0.5, lev->b);
    lev->du = u_half / cells;
    lev->hi.assign(static_cast<std::size_t>(cells) + 1, 1.0);
    const double a = alpha, b = lev->b, c1 = lev->c1;
    auto tail = [a, b, c1](double u) { return c1 / b * std::pow(1.0 - std::pow(u, 1.0 / b), -a - 1.0); };
    for (int j = 0; j < cells; ++j)
      lev->hi[j + 1] = lev->hi[j] - GL::integrate(tail, j * lev->du, (j + 1) * lev->du);

    if (k < depth) {
      const Level& next = *levels_[k + 1];
      lev->has_lo = true;
      lev->y_min = mins[k];
      lev->dy = (0.5 - lev->y_min) / cells;
      lev->lo.assign(static_cast<std::size_t>(cells) + 1, 0.0);
      lev->lo[cells] = lev->hi[cells];
      auto body = [&](double x) {
        return c1 * std::pow(x, -a - 1.0) * std::pow(1.0 - x, b - 1.0) * next.eval(x / (1.0 - x));
      };
      for (int i = cells - 1; i >= 0; --i) {
        const double y0 = lev->y_min + i * lev->dy;
        lev->lo[i] = lev->lo[i + 1] - GL::integrate(body, y0, y0 + lev->dy);
      }
      for (auto& g : lev->lo) g = std::max(g, 0.0);
    }
    levels_[k] = std::move(lev);
  }
}

LargestAtomCdf::~LargestAtomCdf() = default;
LargestAtomCdf::LargestAtomCdf(LargestAtomCdf&&) noexcept = default;
LargestAtomCdf& LargestAtomCdf::operator=(LargestAtomCdf&&) noexcept = default;

double LargestAtomCdf::operator()(double y) const {
  if (std::isnan(y)) throw DomainError("LargestAtomCdf: NaN argument");
  if (y <= 0.0) return 0.0;
  return levels_.front()->eval(y);
}

double generalized_dickman(double alpha, double theta_prime, double s) {
  if (!(s >= 0.0)) throw DomainError("generalized_dickman: s must be non-negative");
  if (s <= 1.0) return 1.0;
  if (std::isinf(s)) return 0.0;
  return LargestAtomCdf(alpha, theta_prime)(1.0 / s);
}

// ---------------------------------------------------------------------------
// Marginal density

double log_marginal_normalizer(const PdParams& params, int n) {
  if (params.is_finite()) throw UnsupportedRegime("marginal density: two-parameter regime only");
  const double a = params.alpha(), th = params.theta();
  double s = 0.0;
  for (int i = 1; i <= n; ++i)
    s += log_gamma(th + 1.0 + (i - 1) * a) - log_gamma(1.0 - a) - log_gamma(th + i * a);
  return s;
}

MarginalDensity::MarginalDensity(const PdParams& params, int n)
    : params_(params),
      n_(n),
      log_c_(n >= 1 ? log_marginal_normalizer(params, n) : 0.0),
      rho_(params.alpha(), params.theta() + n * params.alpha()) {
  if (n < 1) throw DomainError("MarginalDensity: n must be >= 1");
}

double MarginalDensity::operator()(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(n_))
    throw DomainError("MarginalDensity: expected " + std::to_string(n_) + " coordinates");
  double sum = 0.0;
  bool boundary = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0)) throw SupportError("marginal density: coordinates must be non-negative");
    if (i > 0 && x[i] > x[i - 1]) throw SupportError("marginal density: coordinates must be descending");
    if (x[i] == 0.0) boundary = true;
    sum += x[i];
  }
  if (sum > 1.0) throw SupportError("marginal density: coordinates sum above 1");
  if (boundary || sum == 1.0) return 0.0;

  const double a = params_.alpha();
  const double rest = 1.0 - sum;
  double lg = log_c_ + (params_.theta() + n_ * a - 1.0) * std::log(rest);
  for (double xi : x) lg -= (a + 1.0) * std::log(xi);
  const double s = rest / x.back();
  const double rho = s <= 1.0 ? 1.0 : rho_(1.0 / s);
  return rho == 0.0 ? 0.0 : std::exp(lg) * rho;
}

double MarginalDensity::largest_atom_cdf(double y) const {
  if (n_ != 1) throw DomainError("largest_atom_cdf: n = 1 only");
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  auto h = [&](double x) {
    const double v[1] = {x};
    return (*this)(std::span<const double>(v, 1));
  };
  const double tail_exp = params_.theta() + params_.alpha();
  // rho has kinks where (1-x)/x crosses an integer; integrate piecewise.
  double upper = 1.0;
  double mass = 0.0;
  for (int k = 1; upper > y; ++k) {
    const double lower = std::max(y, 1.0 / (k + 1));
    mass += integrate_singular(h, lower, upper, 1.0, k == 1 ? tail_exp : 1.0, 1e-7);
    upper = lower;
  }
  return 1.0 - mass;
}

std::vector<double> MarginalDensity::largest_atom_cdf_sorted(std::span<const double> ys) const {
  if (n_ != 1) throw DomainError("largest_atom_cdf: n = 1 only");
  if (!std::is_sorted(ys.begin(), ys.end())) throw DomainError("largest_atom_cdf_sorted: input must be ascending");
  auto h = [&](double x) {
    const double v[1] = {x};
    return (*this)(std::span<const double>(v, 1));
  };
  const double tail_exp = params_.theta() + params_.alpha();
  // Walk down from 1, accumulating the mass above each point; pieces also
  // break at the kinks 1/(k+1) of rho.
  std::vector<double> out(ys.size());
  double upper = 1.0, mass = 0.0;
  int k = 1;
  for (std::size_t i = ys.size(); i-- > 0;) {
    const double y = std::clamp(ys[i], 0.0, 1.0);
    while (upper > y) {
      const double kink = 1.0 / (k + 1);
      const double lower = std::max(y, kink);
      mass += integrate_singular(h, lower, upper, 1.0, upper == 1.0 ? tail_exp : 1.0, 1e-9);
      upper = lower;
      if (upper == kink) ++k;
    }
    out[i] = y <= 0.0 ? 0.0 : 1.0 - mass;
  }
  return out;
}

double marginal_density_h(const PdParams& params, std::span<const double> x) {
  if (x.empty()) throw DomainError("marginal_density_h: no coordinates");
  return MarginalDensity(params, static_cast<int>(x.size()))(x);
}

}  // namespace pdlab
