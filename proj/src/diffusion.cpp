#include "pdlab/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>

#include <boost/math/special_functions/gamma.hpp>

namespace pdlab {

// ---------------------------------------------------------------------------
// Up/down chain

namespace {

// Applies an up move to `parts` (descending). Row `row` == size() opens a row.
void insert_box(std::vector<int>& parts, std::size_t row) {
  if (row == parts.size())
    parts.push_back(1);
  else
    ++parts[row];
  std::sort(parts.begin(), parts.end(), std::greater<>());
}

void remove_box(std::vector<int>& parts, std::size_t row) {
  if (--parts[row] == 0) parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(row));
  std::sort(parts.begin(), parts.end(), std::greater<>());
}

std::vector<double> up_weights(const PdParams& params, const std::vector<int>& parts) {
  std::vector<double> w(parts.size() + 1);
  for (std::size_t i = 0; i < parts.size(); ++i) w[i] = parts[i] - params.alpha();
  w.back() = std::max(0.0, params.theta() + static_cast<double>(parts.size()) * params.alpha());
  return w;
}

// Partitions of n with positive EPSF mass; in the finite case those with more
// than m blocks are unreachable and are left out.
std::vector<IntegerPartition> support_states(const PdParams& params, int n) {
  auto states = enumerate_partitions(n);
  std::erase_if(states, [&](const IntegerPartition& q) { return epsf_probability(params, q) == 0.0; });
  return states;
}

}  // namespace

IntegerPartition updown_step(const PdParams& params, const IntegerPartition& state, RngStream& rng) {
  const int n = state.size();
  if (n < 1) throw DomainError("updown_step: empty partition");
  std::vector<int> parts = state.parts();
  const auto up = up_weights(params, parts);
  insert_box(parts, rng.categorical(up, n + params.theta()));
  std::vector<double> down(parts.begin(), parts.end());
  remove_box(parts, rng.categorical(down, n + 1.0));
  return IntegerPartition(std::move(parts));
}

TransitionMatrix updown_transition_matrix(const PdParams& params, int n) {
  TransitionMatrix t;
  t.states = support_states(params, n);
  const std::size_t s = t.states.size();
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < s; ++i) index.emplace(t.states[i].parts(), i);
  t.p.assign(s * s, 0.0);
  const double up_total = n + params.theta();
  for (std::size_t i = 0; i < s; ++i) {
    const auto& base = t.states[i].parts();
    const auto up = up_weights(params, base);
    for (std::size_t r = 0; r < up.size(); ++r) {
      if (up[r] == 0.0) continue;
      std::vector<int> mu = base;
      insert_box(mu, r);
      for (std::size_t d = 0; d < mu.size(); ++d) {
        std::vector<int> lam = mu;
        remove_box(lam, d);
        t.p[i * s + index.at(lam)] += up[r] / up_total * mu[d] / (n + 1.0);
      }
    }
  }
  return t;
}

double detailed_balance_error(const PdParams& params, const TransitionMatrix& t) {
  const std::size_t s = t.states.size();
  std::vector<double> m(s);
  for (std::size_t i = 0; i < s; ++i) m[i] = epsf_probability(params, t.states[i]);
  double worst = 0.0;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j)
      worst = std::max(worst, std::abs(m[i] * t.at(i, j) - m[j] * t.at(j, i)));
  return worst;
}

int updown_mixing_steps(const PdParams& params, const TransitionMatrix& t, double tv, int cap) {
  const std::size_t s = t.states.size();
  std::vector<double> m(s);
  for (std::size_t i = 0; i < s; ++i) m[i] = epsf_probability(params, t.states[i]);
  std::vector<double> pk = t.p, next(s * s);
  for (int k = 1; k <= cap; ++k) {
    double worst = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      double d = 0.0;
      for (std::size_t j = 0; j < s; ++j) d += std::abs(pk[i * s + j] - m[j]);
      worst = std::max(worst, 0.5 * d);
    }
    if (worst <= tv) return k;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t l = 0; l < s; ++l) {
        const double a = pk[i * s + l];
        if (a == 0.0) continue;
        for (std::size_t j = 0; j < s; ++j) next[i * s + j] += a * t.p[l * s + j];
      }
    pk.swap(next);
  }
  throw NumericError("updown_mixing_steps: chain did not mix within the cap", tv);
}

std::vector<double> updown_final_counts(const PdParams& params, int n, int steps, std::size_t chains,
                                        std::uint64_t seed, Execution mode) {
  const auto states = support_states(params, n);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i].parts(), i);
  const std::size_t chunks = std::min<std::size_t>(256, std::max<std::size_t>(chains, 1));
  std::vector<std::vector<double>> slots(chunks, std::vector<double>(states.size(), 0.0));
  run_indexed(mode, chunks, [&](std::size_t c) {
    RngStream rng(seed, c);
    for (std::size_t k = c * chains / chunks; k < (c + 1) * chains / chunks; ++k) {
      IntegerPartition x(std::vector<int>{n});
      for (int s = 0; s < steps; ++s) x = updown_step(params, x, rng);
      slots[c][index.at(x.parts())] += 1.0;
    }
  });
  std::vector<double> out(states.size(), 0.0);
  for (const auto& s : slots)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += s[i];
  return out;
}

// ---------------------------------------------------------------------------
// Unlabeled diffusion

std::vector<double> unlabeled_drift(const PdParams& params, std::span<const double> x) {
  std::vector<double> b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) b[i] = -0.5 * (params.theta() * x[i] + params.alpha());
  return b;
}

void selection_increment(std::span<const double> x, std::span<const double> grad, std::span<double> out) {
  double mean = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) mean += x[j] * grad[j];
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = 0.5 * x[i] * (grad[i] - mean);
}

namespace {

// Exact step of dx = -(alpha/2) dt + sqrt(x) dW absorbed at 0, i.e. Z = 4x a
// squared Bessel process of dimension -2 alpha. `mean` receives E[x_dt].
double besq_step(double x, double dt, double alpha, RngStream& rng, double& mean) {
  const double h = 1.0 + alpha;
  const double lam = 2.0 * x / dt;
  // Given survival, x_dt = dt Gamma(k+1) / 2 with P(k) proportional to
  // lam^k / Gamma(k+h+1).
  double w = 1.0, total = 0.0, first = 0.0;
  std::vector<double> terms;
  for (int k = 0;; ++k) {
    terms.push_back(w);
    total += w;
    first += k * w;
    if (k > lam && w < 1e-17 * total) break;
    w *= lam / (k + h + 1.0);
  }
  mean = boost::math::gamma_p(h, lam) * 0.5 * dt * (first / total + 1.0);
  if (rng.gamma(h) >= lam) return 0.0;
  const std::size_t k = rng.categorical(terms, total);
  return 0.5 * dt * rng.gamma(static_cast<double>(k) + 1.0);
}

}  // namespace

struct UnlabeledSimulator::Work {
  std::vector<double> x;
  double residual = 0.0;
  std::vector<double> z, grad, sel;
};

UnlabeledSimulator::UnlabeledSimulator(const PdParams& params, UnlabeledConfig config)
    : params_(params), config_(config) {
  if (!(config.dt > 0.0)) throw DomainError("unlabeled simulator: dt must be positive");
  if (config.dt >= 0.1) throw DomainError("unlabeled simulator: dt must be below 0.1");
  if (!(config.t_end >= config.dt)) throw DomainError("unlabeled simulator: t_end must be >= dt");
  if (config.record_every < 1) throw DomainError("unlabeled simulator: record_every must be >= 1");
  if (config.max_atoms < 1) throw DomainError("unlabeled simulator: max_atoms must be >= 1");
}

UnlabeledSimulator UnlabeledSimulator::with_selection(UnlabeledGradient gradient) const {
  UnlabeledSimulator s = *this;
  s.selection_ = std::move(gradient);
  return s;
}

void UnlabeledSimulator::step(Work& w, RngStream& rng, std::size_t step_index) const {
  const double dt = config_.dt;
  const double sdt = std::sqrt(dt);
  const double alpha = params_.alpha();
  const double theta = params_.theta();
  const double cut = config_.besq_cutoff * dt;
  const std::size_t k = w.x.size();

  if (selection_) {
    w.grad.assign(k, 0.0);
    w.sel.assign(k, 0.0);
    selection_(w.x, w.grad);
    selection_increment(w.x, w.grad, w.sel);
  }

  // Small atoms move first; their centred increments enter the common term
  // s so that the compensation -x_i s keeps the total mass fixed.
  w.z.assign(k, 0.0);
  // The residual stands for atoms too small to carry; it still takes part in
  // the common noise.
  double s = std::sqrt(w.residual) * rng.normal() * sdt;
  for (std::size_t i = 0; i < k; ++i) {
    if (w.x[i] >= cut) {
      w.z[i] = rng.normal() * sdt;
      s += std::sqrt(w.x[i]) * w.z[i];
    } else {
      double mean = 0.0;
      w.z[i] = besq_step(w.x[i], dt, alpha, rng, mean) - w.x[i];
      s += w.z[i] - (mean - w.x[i]);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    const double xi = w.x[i];
    double next;
    if (xi >= cut)
      next = xi - 0.5 * (theta * xi + alpha) * dt + std::sqrt(xi) * w.z[i] - xi * s;
    else
      next = xi + w.z[i] - xi * s;
    if (selection_) next += w.sel[i] * dt;
    if (!std::isfinite(next)) throw SimulationError("unlabeled simulator: non-finite state", step_index);
    w.x[i] = next;
  }
  std::erase_if(w.x, [](double v) { return v <= 0.0; });

  double sum = std::accumulate(w.x.begin(), w.x.end(), 0.0);
  if (sum > 1.0) {
    for (auto& v : w.x) v /= sum;
    w.residual = 0.0;
  } else {
    w.residual = 1.0 - sum;
  }
  if (w.residual > config_.dust_threshold && static_cast<int>(w.x.size()) < config_.max_atoms) {
    // Unresolved mass r would raise phi_2 at rate (1-alpha) r. The new atom
    // r * Beta(1-alpha, b) gets b chosen so that E[v^2] = (1-alpha) r dt; when
    // r is below (1-alpha) dt the whole residual becomes one atom.
    const double r = w.residual;
    double v = r;
    const double c = 0.5 * (std::sqrt(1.0 + 4.0 * (2.0 - alpha) * r / dt) - 1.0);
    const double b = c - (1.0 - alpha);
    if (b > 0.0) v = r * rng.beta(1.0 - alpha, b);
    if (v > 0.0) {
      w.x.push_back(v);
      w.residual = std::max(0.0, r - v);
    }
  }
}

namespace {

RankedWeights snapshot(const std::vector<double>& x, double residual) {
  std::vector<double> sorted(x);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  RankedWeights r{std::move(sorted), residual};
  return r;
}

void check_conservation(const RankedWeights& r, std::size_t step_index) {
  if (std::abs(r.total() - 1.0) > 1e-9)
    throw SimulationError("unlabeled simulator: mass not conserved", step_index);
}

}  // namespace

Trajectory<RankedWeights> UnlabeledSimulator::run(const RankedWeights& x0, RngStream& rng) const {
  x0.validate(1e-9);
  Work w;
  w.x = x0.weights;
  w.residual = x0.residual;
  Trajectory<RankedWeights> traj;
  traj.seed = rng.seed();
  traj.stream = rng.stream();
  traj.times.push_back(0.0);
  traj.states.push_back(snapshot(w.x, w.residual));
  const auto steps = static_cast<std::size_t>(std::llround(config_.t_end / config_.dt));
  for (std::size_t n = 1; n <= steps; ++n) {
    step(w, rng, n);
    if (n % static_cast<std::size_t>(config_.record_every) == 0 || n == steps) {
      traj.times.push_back(static_cast<double>(n) * config_.dt);
      traj.states.push_back(snapshot(w.x, w.residual));
      check_conservation(traj.states.back(), n);
    }
  }
  return traj;
}

void UnlabeledSimulator::run_to(RankedWeights x0, std::span<const double> checkpoints, RngStream& rng,
                                const std::function<void(std::size_t, const RankedWeights&)>& visit) const {
  x0.validate(1e-9);
  Work w;
  w.x = std::move(x0.weights);
  w.residual = x0.residual;
  std::size_t n = 0;
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    const auto target = static_cast<std::size_t>(std::llround(checkpoints[c] / config_.dt));
    while (n < target) step(w, rng, ++n);
    const RankedWeights snap = snapshot(w.x, w.residual);
    check_conservation(snap, n);
    visit(c, snap);
  }
}

Trajectory<RankedWeights> simulate_unlabeled(const PdParams& params, const RankedWeights& x0, double t_end,
                                             double dt, RngStream& rng) {
  UnlabeledConfig cfg;
  cfg.t_end = t_end;
  cfg.dt = dt;
  return UnlabeledSimulator(params, cfg).run(x0, rng);
}

std::vector<std::vector<stats::MeanAccumulator>> unlabeled_moment_ensemble(
    const UnlabeledSimulator& sim, const InitialState& x0, std::span<const double> checkpoints,
    std::span<const int> orders, std::size_t paths, std::uint64_t seed, Execution mode) {
  // per-path values, reduced in path order afterwards
  std::vector<double> values(paths * checkpoints.size() * orders.size());
  const std::size_t stride = checkpoints.size() * orders.size();
  run_indexed(mode, paths, [&](std::size_t i) {
    RngStream rng(seed, i);
    RankedWeights start = x0(rng);
    sim.run_to(std::move(start), checkpoints, rng, [&](std::size_t c, const RankedWeights& w) {
      for (std::size_t j = 0; j < orders.size(); ++j)
        values[i * stride + c * orders.size() + j] = w.power_sum(orders[j]);
    });
  });
  std::vector<std::vector<stats::MeanAccumulator>> out(checkpoints.size(),
                                                       std::vector<stats::MeanAccumulator>(orders.size()));
  for (std::size_t i = 0; i < paths; ++i)
    for (std::size_t c = 0; c < checkpoints.size(); ++c)
      for (std::size_t j = 0; j < orders.size(); ++j) out[c][j].add(values[i * stride + c * orders.size() + j]);
  return out;
}

// ---------------------------------------------------------------------------
// Two-type diffusion

TwoTypeSimulator::TwoTypeSimulator(const TwoTypeParams& tt, TwoTypeConfig config)
    : tt_(tt), config_(config) {
  if (!(config.dt > 0.0) || config.dt >= 0.1) throw DomainError("two-type simulator: dt must lie in (0, 0.1)");
  if (!(config.eps > 0.0 && config.eps < 0.01)) throw DomainError("two-type simulator: bad drift-table range");
  if (config.record_every < 1) throw DomainError("two-type simulator: record_every must be >= 1");
  table_ = std::make_shared<const DriftTable>(tt, config.eps);
}

TwoTypeSimulator TwoTypeSimulator::with_selection(TwoTypeGradient gradient) const {
  TwoTypeSimulator s = *this;
  s.selection_ = std::move(gradient);
  return s;
}

double TwoTypeSimulator::drift(double x) const {
  double b = (*table_)(x);
  if (selection_) b += 0.5 * x * (1.0 - x) * selection_(x);
  return b;
}

// The state is carried as the angle y = 2 asin(sqrt(x)) in [0, pi], where the
// noise is a plain Brownian increment:
//   dy = [2 b(x) - cos(y)/2] / sin(y) dt + dW.
// Near an end the drift blows up like (delta - 1)/(2z), z the distance to the
// end, with delta = 2 alpha at x = 0; Euler with reflection is badly biased
// there when delta < 1. Within kBesselZone * sqrt(dt) of an end, z^2 instead
// takes an exact squared Bessel step with the local dimension
// delta = 1 + 2 z mu_z frozen over the step.
namespace {
constexpr double kBesselZone = 10.0;
}

double TwoTypeSimulator::advance(double y, RngStream& rng, std::size_t step_index) const {
  constexpr double pi = std::numbers::pi;
  const double dt = config_.dt;
  const double sdt = std::sqrt(dt);
  const double x = angle_to_x(y);
  const double sy = std::sin(y);
  double mu = (2.0 * (*table_)(x) - 0.5 * std::cos(y)) / sy;
  if (selection_) mu += 0.25 * sy * selection_(x);

  const bool upper = y > 0.5 * pi;
  const double z = upper ? pi - y : y;
  double next;
  if (z < kBesselZone * sdt) {
    const double mu_z = upper ? -mu : mu;
    const double delta = std::max(1.0 + 2.0 * z * mu_z, 1e-3);
    // BESQ(delta) from z^2: dt * chi'^2_delta(z^2/dt), a Poisson mixture of gammas
    std::poisson_distribution<long> pois(0.5 * z * z / dt);
    const double zn = std::sqrt(2.0 * dt * rng.gamma(0.5 * delta + static_cast<double>(pois(rng))));
    next = upper ? pi - zn : zn;
  } else {
    next = y + std::clamp(mu * dt, -sdt, sdt) + sdt * rng.normal();
  }
  if (!std::isfinite(next)) throw SimulationError("two-type simulator: non-finite state", step_index);
  while (next < 0.0 || next > pi) next = next < 0.0 ? -next : 2.0 * pi - next;
  return next;
}

double TwoTypeSimulator::x_to_angle(double x) { return 2.0 * std::asin(std::sqrt(x)); }
double TwoTypeSimulator::angle_to_x(double y) {
  const double s = std::sin(0.5 * y);
  return s * s;
}

Trajectory<double> TwoTypeSimulator::run(double x0, RngStream& rng) const {
  if (!(x0 > 0.0 && x0 < 1.0)) throw DomainError("two-type simulator: x0 must lie in (0,1)");
  Trajectory<double> traj;
  traj.seed = rng.seed();
  traj.stream = rng.stream();
  double y = x_to_angle(x0);
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  const auto steps = static_cast<std::size_t>(std::llround(config_.t_end / config_.dt));
  for (std::size_t n = 1; n <= steps; ++n) {
    y = advance(y, rng, n);
    if (n % static_cast<std::size_t>(config_.record_every) == 0 || n == steps) {
      traj.times.push_back(static_cast<double>(n) * config_.dt);
      traj.states.push_back(angle_to_x(y));
    }
  }
  return traj;
}

std::vector<double> TwoTypeSimulator::occupation(double x0, double burn_in, double spacing, RngStream& rng) const {
  if (!(x0 > 0.0 && x0 < 1.0)) throw DomainError("two-type simulator: x0 must lie in (0,1)");
  if (!(spacing >= config_.dt)) throw DomainError("two-type occupation: spacing must be >= dt");
  double y = x_to_angle(x0);
  const auto total = static_cast<std::size_t>(std::llround(config_.t_end / config_.dt));
  const auto start = static_cast<std::size_t>(std::llround(burn_in / config_.dt));
  const auto every = static_cast<std::size_t>(std::llround(spacing / config_.dt));
  std::vector<double> out;
  for (std::size_t n = 1; n <= total; ++n) {
    y = advance(y, rng, n);
    if (n >= start && (n - start) % every == 0) out.push_back(angle_to_x(y));
  }
  return out;
}

Trajectory<double> simulate_two_type(const PdParams& params, double p, double x0, double t_end, double dt,
                                     RngStream& rng) {
  TwoTypeConfig cfg;
  cfg.t_end = t_end;
  cfg.dt = dt;
  return TwoTypeSimulator(TwoTypeParams::make(params, p), cfg).run(x0, rng);
}

std::vector<double> two_type_occupation_ensemble(const TwoTypeSimulator& sim, double x0, double burn_in,
                                                 double spacing, std::size_t paths, std::uint64_t seed,
                                                 Execution mode) {
  std::vector<std::vector<double>> slots(paths);
  run_indexed(mode, paths, [&](std::size_t i) {
    RngStream rng(seed, i);
    slots[i] = sim.occupation(x0, burn_in, spacing, rng);
  });
  std::vector<double> out;
  for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
  return out;
}

// ---------------------------------------------------------------------------

HittingReport explore_hitting(const UnlabeledSimulator& sim, const RankedWeights& x0, int k, double delta,
                              std::size_t paths, std::uint64_t seed) {
  if (k < 1) throw DomainError("explore_hitting: k must be >= 1");
  HittingReport rep{k, delta};
  for (std::size_t i = 0; i < paths; ++i) {
    RngStream rng(seed, i);
    const auto traj = sim.run(x0, rng);
    for (const auto& w : traj.states) {
      double top = 0.0;
      for (int j = 0; j < k && j < static_cast<int>(w.weights.size()); ++j) top += w.weights[j];
      const double gap = std::max(0.0, 1.0 - top);
      ++rep.records;
      if (gap < delta) ++rep.near;
      rep.min_gap = std::min(rep.min_gap, gap);
    }
  }
  return rep;
}

}  // namespace pdlab
