#include "pdlab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace pdlab {

namespace {

// Stops early once the unexplored mass is below stop_below; that mass stays
// in the residual.
GemDraw gem_sticks(const PdParams& params, int n_sticks, double stop_below, RngStream& rng) {
  const double alpha = params.alpha();
  const double theta = params.theta();
  GemDraw g;
  g.sticks.reserve(static_cast<std::size_t>(n_sticks));
  double rest = 1.0;
  for (int k = 1; k <= n_sticks && rest >= stop_below; ++k) {
    const double u = rng.beta(1.0 - alpha, theta + k * alpha);
    g.sticks.push_back(rest * u);
    rest *= 1.0 - u;
  }
  g.residual = rest;
  return g;
}

}  // namespace

GemDraw sample_gem(const PdParams& params, int n_sticks, RngStream& rng) {
  if (params.is_finite()) throw UnsupportedRegime("sample_gem: two-parameter regime only");
  if (n_sticks <= 0) throw DomainError("sample_gem: n_sticks must be positive");
  return gem_sticks(params, n_sticks, 0.0, rng);
}

RankedWeights sample_finite_pd(double kappa, int m, RngStream& rng) {
  if (!(kappa > 0.0)) throw DomainError("sample_finite_pd: kappa must be positive");
  if (m < 2) throw DomainError("sample_finite_pd: m must be >= 2");
  std::vector<double> w(static_cast<std::size_t>(m));
  double s = 0.0;
  for (auto& x : w) s += (x = rng.gamma(kappa));
  for (auto& x : w) x /= s;
  std::sort(w.begin(), w.end(), std::greater<>());
  return RankedWeights{std::move(w), 0.0};
}

RankedWeights sample_pd_ranked(const PdParams& params, int truncation, RngStream& rng) {
  if (params.is_finite()) return sample_finite_pd(params.kappa(), params.finite_m(), rng);
  if (truncation <= 0) throw DomainError("sample_pd_ranked: truncation must be positive");
  GemDraw g = gem_sticks(params, truncation, kDustMass, rng);
  std::sort(g.sticks.begin(), g.sticks.end(), std::greater<>());
  return RankedWeights{std::move(g.sticks), g.residual};
}

IntegerPartition sample_crp_partition(const PdParams& params, int n, RngStream& rng) {
  if (n <= 0) throw DomainError("sample_crp_partition: n must be positive");
  const double alpha = params.alpha();
  const double theta = params.theta();
  std::vector<int> blocks{1};
  std::vector<double> w;
  for (int seated = 1; seated < n; ++seated) {
    w.resize(blocks.size() + 1);
    double total = 0.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) total += (w[b] = blocks[b] - alpha);
    const double fresh = std::max(0.0, theta + static_cast<double>(blocks.size()) * alpha);
    total += (w.back() = fresh);
    const std::size_t pick = rng.categorical(w, total);
    if (pick == blocks.size())
      blocks.push_back(1);
    else
      ++blocks[pick];
  }
  return IntegerPartition(std::move(blocks));
}

double sample_positive_stable(double alpha, double c, RngStream& rng) {
  // Kanter's representation.
  const double u = std::numbers::pi * rng.uniform();
  const double e = rng.exponential();
  const double s = std::sin(alpha * u) / std::pow(std::sin(u), 1.0 / alpha) *
                   std::pow(std::sin((1.0 - alpha) * u) / e, (1.0 - alpha) / alpha);
  return std::pow(c, 1.0 / alpha) * s;
}

double sample_tempered_stable_increment(double alpha, double tau, RngStream& rng) {
  // Laplace exponent tau * Gamma(1-alpha)/alpha * ((1+l)^alpha - 1): a stable
  // law with scale c = tau Gamma(1-alpha)/alpha tilted by e^{-x}. Accepting a
  // stable proposal with probability e^{-x} has rate e^{-c}, so long spans are
  // cut into pieces with c <= 1 and summed.
  const double c_total = tau * std::tgamma(1.0 - alpha) / alpha;
  const int pieces = std::max(1, static_cast<int>(std::ceil(c_total)));
  const double c = c_total / pieces;
  double sum = 0.0;
  for (int k = 0; k < pieces; ++k) {
    long tries = 0;
    for (;;) {
      const double x = sample_positive_stable(alpha, c, rng);
      if (rng.uniform() < std::exp(-x)) {
        sum += x;
        break;
      }
      if (++tries >= kTemperedRetryCap)
        throw NumericError("tempered stable rejection exceeded the retry cap", c);
    }
  }
  return sum;
}

std::vector<double> sample_finite_marginals_via_subordinator(const PdParams& params,
                                                             std::span<const double> cell_masses,
                                                             RngStream& rng) {
  if (params.is_finite()) throw UnsupportedRegime("subordinator marginals: two-parameter regime only");
  const double alpha = params.alpha();
  const double theta = params.theta();
  if (alpha == 0.0)
    throw UnsupportedRegime("subordinator marginals: alpha = 0 is the gamma (Dirichlet) case");
  if (theta < 0.0) throw UnsupportedRegime("subordinator marginals: theta must be >= 0");
  if (cell_masses.empty()) throw DomainError("subordinator marginals: no cells");
  double total = 0.0;
  for (double a : cell_masses) {
    if (!(a > 0.0)) throw DomainError("subordinator marginals: cell masses must be positive");
    total += a;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("subordinator marginals: cell masses must sum to 1");

  std::vector<double> inc(cell_masses.size());
  if (theta == 0.0) {
    for (std::size_t i = 0; i < inc.size(); ++i) inc[i] = sample_positive_stable(alpha, cell_masses[i], rng);
  } else {
    const double span = alpha * rng.gamma(theta / alpha) / std::tgamma(1.0 - alpha);
    for (std::size_t i = 0; i < inc.size(); ++i)
      inc[i] = sample_tempered_stable_increment(alpha, span * cell_masses[i], rng);
  }
  const double z = std::accumulate(inc.begin(), inc.end(), 0.0);
  for (auto& x : inc) x /= z;
  return inc;
}

double evaluate_monomial(const Monomial& m, const RankedWeights& w) {
  double v = 1.0;
  for (int k : m) v *= w.power_sum(k);
  return v;
}

std::vector<stats::MeanAccumulator> ranked_moment_ensemble(const PdParams& params,
                                                           const std::vector<Monomial>& monomials,
                                                           std::size_t draws, int truncation,
                                                           std::uint64_t seed, Execution mode) {
  if (truncation <= 0) throw DomainError("ranked_moment_ensemble: truncation must be positive");
  int top = 1;
  for (const auto& m : monomials)
    for (int k : m) top = std::max(top, k);
  const std::size_t chunks = std::min(kEnsembleChunks, std::max<std::size_t>(draws, 1));
  std::vector<std::vector<stats::MeanAccumulator>> slots(chunks,
                                                         std::vector<stats::MeanAccumulator>(monomials.size()));
  run_indexed(mode, chunks, [&](std::size_t c) {
    RngStream rng(seed, c);
    const std::size_t lo = c * draws / chunks;
    const std::size_t hi = (c + 1) * draws / chunks;
    std::vector<double> phi(static_cast<std::size_t>(top) + 1);
    for (std::size_t d = lo; d < hi; ++d) {
      // power sums ignore order, so the sort in sample_pd_ranked is skipped
      const std::vector<double> w = params.is_finite() ? sample_pd_ranked(params, truncation, rng).weights
                                                       : gem_sticks(params, truncation, kDustMass, rng).sticks;
      std::fill(phi.begin(), phi.end(), 0.0);
      for (double x : w) {
        double p = x;
        for (int k = 2; k <= top; ++k) phi[k] += (p *= x);
      }
      for (std::size_t j = 0; j < monomials.size(); ++j) {
        double v = 1.0;
        for (int k : monomials[j]) v *= phi[k];
        slots[c][j].add(v);
      }
    }
  });
  std::vector<stats::MeanAccumulator> out(monomials.size());
  for (const auto& s : slots)
    for (std::size_t j = 0; j < out.size(); ++j) out[j].merge(s[j]);
  return out;
}

void write_weights_csv(std::ostream& os, const std::vector<RankedWeights>& rows) {
  std::size_t k = 0;
  for (const auto& r : rows) k = std::max(k, r.weights.size());
  for (std::size_t i = 1; i <= k; ++i) os << 'w' << i << ',';
  os << "residual\n";
  os.precision(17);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < k; ++i) os << (i < r.weights.size() ? r.weights[i] : 0.0) << ',';
    os << r.residual << '\n';
  }
}

}  // namespace pdlab
