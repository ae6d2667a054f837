#include "pdlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "pdlab/density.hpp"
#include "pdlab/diffusion.hpp"
#include "pdlab/partitions.hpp"
#include "pdlab/powersum.hpp"
#include "pdlab/sampling.hpp"
#include "pdlab/stats.hpp"

namespace pdlab {

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string at(const PdParams& p) {
  return "(alpha=" + fmt("%g", p.alpha()) + ", theta=" + fmt("%g", p.theta()) + ")";
}

void close(Report& r, std::string name, double expected, double actual, double tol) {
  r.checks.push_back({std::move(name), expected, actual, tol, std::abs(actual - expected) <= tol});
}

// actual must not exceed tol
void bound(Report& r, std::string name, double actual, double tol) {
  r.checks.push_back({std::move(name), 0.0, actual, tol, actual <= tol});
}

std::vector<PdParams> points(const VerifyConfig& c, std::initializer_list<std::pair<double, double>> defaults) {
  if (c.alpha || c.theta) {
    if (!c.alpha || !c.theta) throw DomainError("verify: give both --alpha and --theta or neither");
    return {PdParams::make(*c.alpha, *c.theta)};
  }
  std::vector<PdParams> out;
  for (auto [a, t] : defaults) out.push_back(PdParams::make(a, t));
  return out;
}

// alpha in {0, .3, .5, .8}, theta in {-alpha/2, 0, .5, 2}, valid pairs only
std::vector<PdParams> standard_grid(const VerifyConfig& c) {
  if (c.alpha || c.theta) return points(c, {});
  std::vector<PdParams> out;
  for (double a : {0.0, 0.3, 0.5, 0.8})
    for (double t : {-a / 2.0, 0.0, 0.5, 2.0})
      if (t > -a && !(a == 0.0 && t == 0.0)) out.push_back(PdParams::two_param(a, t));
  return out;
}

Report suite_epsf(const VerifyConfig& c) {
  Report r{"epsf", {}, {}};
  const int lo = c.n ? *c.n : 1;
  const int hi = c.n ? *c.n : 20;
  for (const auto& p : standard_grid(c)) {
    double worst = 0.0;
    const bool first = r.checks.empty();
    for (int n = lo; n <= hi; ++n) {
      const double total = epsf_sums(p, n).total;
      worst = std::max(worst, std::abs(total - 1.0));
      if (first) r.rows.push_back({n, total, 1.0, std::abs(total - 1.0)});
    }
    bound(r, "max |sum M_n - 1| over n in [" + std::to_string(lo) + "," + std::to_string(hi) + "] " + at(p), worst,
          1e-10);
  }
  return r;
}

Report suite_aux(const VerifyConfig& c) {
  Report r{"aux-identity", {}, {}};
  const auto pts = points(c, {{0.5, 0.5}, {0.3, 1.0}, {0.8, 2.0}});
  for (const auto& p : pts) {
    double worst = 0.0;
    for (int n = 1; n <= c.n_max; ++n) {
      const double lhs = epsf_weighted_block_sum(p, n);
      const double rhs = expected_block_sum_closed_form(p, n);
      worst = std::max(worst, std::abs(lhs - rhs));
      if (&p == &pts.front()) r.rows.push_back({n, lhs, rhs, std::abs(lhs - rhs)});
    }
    bound(r, "max |lhs - rhs| over n <= " + std::to_string(c.n_max) + " " + at(p), worst, 1e-8);
  }
  // growth: rhs / n^alpha stays within a factor 2 over n = 1e2..1e5
  const PdParams g = pts.front();
  double lo = INFINITY, hi = 0.0;
  for (int n : {100, 1000, 10000, 100000}) {
    const double v = expected_block_sum_closed_form(g, n) / std::pow(n, g.alpha());
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  r.checks.push_back({"growth: max/min of rhs/n^alpha over n=1e2..1e5 " + at(g), 1.0, hi / lo, 2.0, hi / lo < 2.0});
  return r;
}

Report suite_generator(const VerifyConfig& c) {
  Report r{"generator", {}, {}};
  const int deg = c.max_degree > 0 ? c.max_degree : 6;
  auto monos = monomials_up_to_degree(deg);
  std::vector<PowerSumPoly> polys;
  for (const auto& m : monos) polys.push_back(PowerSumPoly::monomial(m));
  for (const auto& p : standard_grid(c)) {
    std::vector<PowerSumPoly> images;
    double zero = 0.0;
    for (const auto& u : polys) {
      images.push_back(generator_apply(p, u));
      zero = std::max(zero, std::abs(pd_expectation(p, images.back())));
    }
    double sym = 0.0, gamma = 0.0;
    for (std::size_t i = 0; i < polys.size(); ++i)
      for (std::size_t j = i; j < polys.size(); ++j) {
        const double uv = pd_expectation(p, images[i] * polys[j]);
        const double vu = pd_expectation(p, polys[i] * images[j]);
        sym = std::max(sym, std::abs(uv - vu));
        gamma = std::max(gamma, std::abs(-uv - dirichlet_form_carre_du_champ(p, polys[i], polys[j])));
      }
    const std::string tag = " (degree <= " + std::to_string(deg) + ") " + at(p);
    bound(r, "max |E[A u]|" + tag, zero, 1e-10);
    bound(r, "max |E[(A u) v] - E[u (A v)]|" + tag, sym, 1e-10);
    bound(r, "max |E(u,v) - E[Gamma(u,v)]/2|" + tag, gamma, 1e-10);
  }
  return r;
}

Report suite_spectrum(const VerifyConfig& c) {
  Report r{"spectrum", {}, {}};
  const int deg = c.max_degree > 0 ? c.max_degree : 8;
  std::vector<double> thetas = c.theta ? std::vector<double>{*c.theta} : std::vector<double>{0.5, 1.0, 2.0};
  std::vector<double> alphas = c.alpha ? std::vector<double>{*c.alpha} : std::vector<double>{0.2, 0.7};
  for (double t : thetas) {
    std::vector<std::vector<SpectralLevel>> per_alpha;
    for (double a : alphas) {
      const PdParams p = PdParams::make(a, t);
      per_alpha.push_back(spectrum(p, deg));
      for (const auto& lv : per_alpha.back()) {
        const int m = lv.degree;
        const double want = m == 0 ? 0.0 : -0.5 * m * (m - 1 + t);
        const std::string tag = "m=" + std::to_string(m) + " " + at(p);
        close(r, "eigenvalue " + tag, want, lv.eigenvalue, 1e-10 * std::max(1.0, std::abs(want)));
        const double mult = m == 0 ? 1.0 : static_cast<double>(partition_count(m) - partition_count(m - 1));
        close(r, "multiplicity " + tag, mult, static_cast<double>(lv.multiplicity), 0.0);
      }
    }
    for (std::size_t k = 1; k < per_alpha.size(); ++k) {
      double diff = per_alpha[k].size() == per_alpha[0].size() ? 0.0 : INFINITY;
      for (std::size_t i = 0; i < std::min(per_alpha[k].size(), per_alpha[0].size()); ++i)
        diff = std::max(diff, std::abs(per_alpha[k][i].eigenvalue - per_alpha[0][i].eigenvalue));
      bound(r, "eigenvalues agree across alpha at theta=" + fmt("%g", t), diff, 1e-12);
    }
  }
  return r;
}

Report suite_moments(const VerifyConfig& c) {
  Report r{"moments-mc", {}, {}};
  const std::size_t draws = c.paths.value_or(100000);
  const int trunc = c.truncation.value_or(kDefaultTruncation);
  std::vector<Monomial> monos = monomials_up_to_degree(c.max_degree > 0 ? c.max_degree : 5);
  monos.erase(monos.begin());  // the constant
  for (const auto& p : points(c, {{0.5, 0.5}, {0.0, 1.0}, {0.3, 2.0}, {0.8, 0.2}})) {
    const auto est = ranked_moment_ensemble(p, monos, draws, trunc, c.seed);
    for (std::size_t j = 0; j < monos.size(); ++j) {
      const double exact = monomial_expectation(p.alpha(), p.theta(), monos[j]);
      close(r, "E[" + monomial_to_string(monos[j]) + "] " + at(p), exact, est[j].mean(),
            3.0 * est[j].standard_error());
    }
    if (p.alpha() == 0.5 && p.theta() == 0.5)
      close(r, "E[phi2] = 1/3 exactly " + at(p), 1.0 / 3.0, pd_expectation(p, PowerSumPoly::phi(2)), 1e-15);
  }
  return r;
}

Report suite_diffusion(const VerifyConfig& c) {
  Report r{"diffusion-ode", {}, {}};
  UnlabeledConfig cfg;
  cfg.t_end = 1.0;
  cfg.dt = c.dt.value_or(1e-3);
  const std::vector<double> cps{0.1, 0.25, 0.5, 0.75, 1.0};
  const std::vector<int> orders{2, 3};
  const double ones[2] = {1.0, 1.0};
  for (const auto& p : points(c, {{0.0, 1.0}, {0.5, 0.5}})) {
    UnlabeledSimulator sim(p, cfg);
    const auto res = unlabeled_moment_ensemble(
        sim, [](RngStream&) { return RankedWeights{{1.0}, 0.0}; }, cps, orders, c.paths.value_or(10000), c.seed);
    for (std::size_t k = 0; k < cps.size(); ++k)
      for (std::size_t j = 0; j < orders.size(); ++j) {
        const int m = orders[j];
        const double exact = moment_ode_solution(p, m, std::span<const double>(ones, m - 1), cps[k]);
        close(r, "phi" + std::to_string(m) + " at t=" + fmt("%g", cps[k]) + " " + at(p), exact,
              res[k][j].mean(), 3.0 * res[k][j].standard_error());
      }
  }
  return r;
}

// five-point derivative
template <class F>
double deriv(F&& f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

Report suite_two_type(const VerifyConfig& c) {
  Report r{"two-type-density", {}, {}};
  {
    const auto tt = TwoTypeParams::make(PdParams::make(0.5, 0.0), 0.5);
    double worst = 0.0;
    for (int i = 1; i < 100; ++i) {
      const double x = i / 100.0;
      worst = std::max(worst, std::abs(two_type_density(tt, x) - 1.0 / (std::numbers::pi * std::sqrt(x * (1 - x)))));
    }
    bound(r, "arcsine case: max |q - 1/(pi sqrt(x(1-x)))| on x = 0.01..0.99", worst, 1e-8);
  }
  std::vector<std::tuple<double, double, double>> pts;  // alpha, p, theta
  if (c.alpha || c.theta || c.p) {
    if (!c.alpha || !c.theta || !c.p) throw DomainError("verify two-type-density: give --alpha, --theta and --p");
    pts.emplace_back(*c.alpha, *c.p, *c.theta);
  } else {
    pts = {{0.5, 0.5, 0.0}, {0.3, 0.4, 1.5}, {0.7, 0.3, 0.0}, {0.6, 0.7, 0.4}};
  }
  for (auto [a, p, t] : pts) {
    const auto tt = TwoTypeParams::make(PdParams::make(a, t), p);
    const std::string tag = "(alpha=" + fmt("%g", a) + ", p=" + fmt("%g", p) + ", theta=" + fmt("%g", t) + ")";
    // mass on [0, 1/2] plus the mirrored mass of the complementary type
    const double total = two_type_cdf(tt, 0.5) + two_type_cdf(TwoTypeParams{tt.params, tt.pbar()}, 0.5);
    close(r, "normalization " + tag, 1.0, total, 1e-4);
    auto qa = [&](double x) { return x * (1.0 - x) * two_type_density(tt, x); };
    double flux = 0.0;
    for (int i = 1; i < 20; ++i) {
      const double x = i / 20.0;
      flux = std::max(flux, std::abs(0.5 * deriv(qa, x, 1e-3) - two_type_drift(tt, x) * two_type_density(tt, x)));
    }
    bound(r, "max |stationary flux| on x = 0.05..0.95 " + tag, flux, 1e-5);
    if (t > 0.0) {
      double gap = 0.0;
      for (int i = 1; i < 10; ++i)
        gap = std::max(gap, std::abs(two_type_cdf(tt, i / 10.0) - two_type_cdf_delta_form(tt, i / 10.0)));
      bound(r, "CDF kernels agree " + tag, gap, 1e-6);
    }
  }
  return r;
}

Report suite_updown(const VerifyConfig& c) {
  Report r{"updown-balance", {}, {}};
  const auto pts = points(c, {{0.5, 0.5}, {0.0, 1.0}, {0.3, 2.0}, {-0.5, 2.0}});
  const int lo = c.n ? *c.n : 2;
  const int hi = c.n ? *c.n : 8;
  for (const auto& p : pts) {
    double worst = 0.0;
    for (int n = lo; n <= hi; ++n) worst = std::max(worst, detailed_balance_error(p, updown_transition_matrix(p, n)));
    bound(r, "max detailed-balance error, n in [" + std::to_string(lo) + "," + std::to_string(hi) + "] " + at(p),
          worst, 1e-12);
  }
  // Chi-square on n = 5 from independent chains started at (n), each run
  // long enough that P^T is within 1e-4 of M_n in total variation.
  const int n = c.n ? *c.n : 5;
  const PdParams p = pts.front();
  const auto t = updown_transition_matrix(p, n);
  const int steps = updown_mixing_steps(p, t);
  const std::size_t budget = c.paths.value_or(1000000);
  const std::size_t chains = std::max<std::size_t>(budget / static_cast<std::size_t>(steps), 1);
  const auto counts = updown_final_counts(p, n, steps, chains, c.seed);
  std::vector<double> expected(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    expected[i] = epsf_probability(p, t.states[i]) * static_cast<double>(chains);
  const double stat = stats::chi_square_statistic(counts, expected);
  const double crit = stats::chi_square_critical(static_cast<int>(counts.size()) - 1, kSignificance);
  bound(r, "chi-square of shape counts, n=" + std::to_string(n) + ", " + std::to_string(chains) + " chains x " +
               std::to_string(steps) + " steps " + at(p),
        stat, crit);
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"epsf",     "aux-identity",  "generator",        "spectrum",
                                              "moments-mc", "diffusion-ode", "two-type-density", "updown-balance"};
  return names;
}

Report verify_suite(std::string_view name, const VerifyConfig& config) {
  if (name == "epsf") return suite_epsf(config);
  if (name == "aux-identity") return suite_aux(config);
  if (name == "generator") return suite_generator(config);
  if (name == "spectrum") return suite_spectrum(config);
  if (name == "moments-mc") return suite_moments(config);
  if (name == "diffusion-ode") return suite_diffusion(config);
  if (name == "two-type-density") return suite_two_type(config);
  if (name == "updown-balance") return suite_updown(config);
  throw DomainError("unknown verification suite '" + std::string(name) + "'");
}

}  // namespace pdlab
