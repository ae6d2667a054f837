#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "pdlab/core.hpp"
#include "pdlab/density.hpp"
#include "pdlab/parallel.hpp"
#include "pdlab/partitions.hpp"
#include "pdlab/rng.hpp"
#include "pdlab/stats.hpp"

namespace pdlab {

template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// ---------------------------------------------------------------------------
// Up/down chain on partitions of a fixed n

/// One up move (two-parameter urn insertion) followed by one down move
/// (removal of a uniformly chosen box). Reversible with respect to M_n.
IntegerPartition updown_step(const PdParams& params, const IntegerPartition& state, RngStream& rng);

struct TransitionMatrix {
  std::vector<IntegerPartition> states;  // reverse-lexicographic
  std::vector<double> p;                 // row-major
  double at(std::size_t i, std::size_t j) const { return p[i * states.size() + j]; }
};

/// Exact up/down kernel on the partitions of n that carry positive EPSF mass,
/// by enumerating every up-then-down composition.
TransitionMatrix updown_transition_matrix(const PdParams& params, int n);

/// max_{i,j} |M_n(i) P(i,j) - M_n(j) P(j,i)|
double detailed_balance_error(const PdParams& params, const TransitionMatrix& t);

/// Smallest number of steps after which every row of P^k is within the given
/// total-variation distance of M_n.
int updown_mixing_steps(const PdParams& params, const TransitionMatrix& t, double tv = 1e-4, int cap = 10000);

/// Shape counts (indexed like updown_transition_matrix(params, n).states) of
/// the final states of `chains` independent chains, each run `steps` moves
/// from the one-row partition (n).
std::vector<double> updown_final_counts(const PdParams& params, int n, int steps, std::size_t chains,
                                        std::uint64_t seed, Execution mode = Execution::Parallel);

// ---------------------------------------------------------------------------
// Unlabeled diffusion on ranked weights

/// Gradient of log rho^2 evaluated at the atoms; fills grad[i].
using UnlabeledGradient = std::function<void(std::span<const double> x, std::span<double> grad)>;
/// d/dx log rho^2 for the two-type model.
using TwoTypeGradient = std::function<double(double x)>;

struct UnlabeledConfig {
  double t_end = 1.0;
  double dt = 1e-3;
  int record_every = 1;
  /// Residual mass below which no new atom is split off.
  double dust_threshold = 1e-9;
  /// Upper bound on the number of atoms carried.
  int max_atoms = 4000;
  /// Atoms below besq_cutoff * dt take an exact BESQ(-2 alpha) step.
  double besq_cutoff = 20.0;
};

/// Drift b_i = -(theta x_i + alpha)/2 of the unlabeled model.
std::vector<double> unlabeled_drift(const PdParams& params, std::span<const double> x);

/// Euler-Maruyama for the unlabeled model, with the noise factored as
/// sqrt(x_i) dW_i - x_i sum_j sqrt(x_j) dW_j. Atoms below besq_cutoff * dt
/// step exactly as absorbed squared Bessel processes, and the residual joins
/// the common noise as one more source. Each step one new atom
/// residual * Beta(1-alpha, b) is split off, with b set so the births supply
/// the phi_2 growth the residual mass would have produced.
class UnlabeledSimulator {
 public:
  UnlabeledSimulator(const PdParams& params, UnlabeledConfig config);

  /// Adds (1/2) a(x) grad log rho^2 to the drift.
  UnlabeledSimulator with_selection(UnlabeledGradient gradient) const;

  Trajectory<RankedWeights> run(const RankedWeights& x0, RngStream& rng) const;

  /// Advances `state` to each time in `checkpoints` (ascending) and calls
  /// visit(k, state) there.
  void run_to(RankedWeights x0, std::span<const double> checkpoints, RngStream& rng,
              const std::function<void(std::size_t, const RankedWeights&)>& visit) const;

  const PdParams& params() const noexcept { return params_; }
  const UnlabeledConfig& config() const noexcept { return config_; }

 private:
  struct Work;
  void step(Work& w, RngStream& rng, std::size_t step_index) const;

  PdParams params_;
  UnlabeledConfig config_;
  UnlabeledGradient selection_;
};

Trajectory<RankedWeights> simulate_unlabeled(const PdParams& params, const RankedWeights& x0, double t_end,
                                             double dt, RngStream& rng);

/// Ensemble means of phi_m at the checkpoints for each m in `orders`:
/// result[k][j] accumulates phi_{orders[j]} at checkpoints[k]. Path i uses
/// stream i, so Serial and Parallel agree bit-for-bit.
using InitialState = std::function<RankedWeights(RngStream&)>;
std::vector<std::vector<stats::MeanAccumulator>> unlabeled_moment_ensemble(
    const UnlabeledSimulator& sim, const InitialState& x0, std::span<const double> checkpoints,
    std::span<const int> orders, std::size_t paths, std::uint64_t seed, Execution mode = Execution::Parallel);

// ---------------------------------------------------------------------------
// Two-type labeled diffusion

struct TwoTypeConfig {
  double t_end = 100.0;
  double dt = 1e-3;
  int record_every = 100;
  double eps = 1e-6;  // drift table covers [eps, 1 - eps]
};

/// Steps the angle y = 2 asin(sqrt(x)), which has unit noise, with
/// reflection at 0 and pi.
class TwoTypeSimulator {
 public:
  TwoTypeSimulator(const TwoTypeParams& tt, TwoTypeConfig config);

  /// Adds (1/2) x (1-x) d/dx log rho^2 to the drift.
  TwoTypeSimulator with_selection(TwoTypeGradient gradient) const;

  Trajectory<double> run(double x0, RngStream& rng) const;

  /// Records the state every `spacing` time units on [burn_in, t_end].
  std::vector<double> occupation(double x0, double burn_in, double spacing, RngStream& rng) const;

  double drift(double x) const;
  const TwoTypeConfig& config() const noexcept { return config_; }

 private:
  double advance(double y, RngStream& rng, std::size_t step_index) const;
  static double x_to_angle(double x);
  static double angle_to_x(double y);

  TwoTypeParams tt_;
  TwoTypeConfig config_;
  std::shared_ptr<const DriftTable> table_;
  TwoTypeGradient selection_;
};

Trajectory<double> simulate_two_type(const PdParams& params, double p, double x0, double t_end, double dt,
                                     RngStream& rng);

/// Occupation samples pooled over independent paths (path i uses stream i).
std::vector<double> two_type_occupation_ensemble(const TwoTypeSimulator& sim, double x0, double burn_in,
                                                 double spacing, std::size_t paths, std::uint64_t seed,
                                                 Execution mode = Execution::Parallel);

/// Wraps a base simulator with the drift of the rho^2-transformed form.
inline TwoTypeSimulator apply_selection(const TwoTypeSimulator& base, TwoTypeGradient gradient) {
  return base.with_selection(std::move(gradient));
}
inline UnlabeledSimulator apply_selection(const UnlabeledSimulator& base, UnlabeledGradient gradient) {
  return base.with_selection(std::move(gradient));
}

/// Drift increment (1/2) a(x) g for the unlabeled model:
/// out_i = (1/2) x_i (g_i - sum_j x_j g_j).
void selection_increment(std::span<const double> x, std::span<const double> grad, std::span<double> out);

// ---------------------------------------------------------------------------
// Exploratory

struct HittingReport {
  int k;
  double delta;
  std::size_t records = 0;
  std::size_t near = 0;  // records with x_1 + ... + x_k > 1 - delta
  double min_gap = 1.0;  // smallest observed 1 - (x_1 + ... + x_k)
};

/// Proximity of unlabeled paths to {x_1 + ... + x_k = 1}.
HittingReport explore_hitting(const UnlabeledSimulator& sim, const RankedWeights& x0, int k, double delta,
                              std::size_t paths, std::uint64_t seed);

}  // namespace pdlab
