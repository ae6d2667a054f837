#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "pdlab/core.hpp"
#include "pdlab/parallel.hpp"
#include "pdlab/partitions.hpp"
#include "pdlab/powersum.hpp"
#include "pdlab/rng.hpp"
#include "pdlab/stats.hpp"

namespace pdlab {

inline constexpr int kDefaultTruncation = 1000;
/// sample_pd_ranked stops breaking sticks once less than this much mass is left.
inline constexpr double kDustMass = 1e-16;

struct GemDraw {
  std::vector<double> sticks;
  double residual = 1.0;  // prod_k (1 - U_k)
};

/// V_1..V_n of GEM(alpha, theta): U_k ~ Beta(1 - alpha, theta + k alpha),
/// V_k = U_k prod_{j<k} (1 - U_j).
GemDraw sample_gem(const PdParams& params, int n_sticks, RngStream& rng);

/// Ranked PD(alpha, theta) truncated to the first `truncation` GEM sticks;
/// the unexplored mass stays in the residual. Fewer sticks are returned
/// when the remainder falls below kDustMass first. The finite case delegates to
/// sample_finite_pd and is exact.
RankedWeights sample_pd_ranked(const PdParams& params, int truncation, RngStream& rng);

/// Ranked symmetric Dirichlet(kappa, ..., kappa) on m atoms.
RankedWeights sample_finite_pd(double kappa, int m, RngStream& rng);

/// Block sizes after seating n customers in the two-parameter urn.
IntegerPartition sample_crp_partition(const PdParams& params, int n, RngStream& rng);

template <class Label>
struct AtomicMeasure {
  struct Atom {
    Label label;
    double mass;
  };
  std::vector<Atom> atoms;
  double residual = 0.0;  // truncated mass, carried by no atom

  double mass_of(const Label& l) const {
    double s = 0.0;
    for (const auto& a : atoms)
      if (a.label == l) s += a.mass;
    return s;
  }
  double total() const {
    double s = residual;
    for (const auto& a : atoms) s += a.mass;
    return s;
  }
};

/// Xi = sum_k rho_k delta_{xi_k} with stick-breaking masses (unranked) and
/// xi_k drawn i.i.d. by `base(rng)`. In the finite case the masses are
/// Dirichlet(kappa, ..., kappa) on exactly m atoms and `truncation` is
/// ignored.
template <class Label, class BaseSampler>
AtomicMeasure<Label> sample_dirichlet_process(const PdParams& params, BaseSampler&& base, int truncation,
                                              RngStream& rng) {
  if (truncation <= 0) throw DomainError("sample_dirichlet_process: truncation must be positive");
  AtomicMeasure<Label> out;
  std::vector<double> masses;
  if (params.is_finite()) {
    const int m = params.finite_m();
    masses.resize(static_cast<std::size_t>(m));
    double s = 0.0;
    for (auto& w : masses) s += (w = rng.gamma(params.kappa()));
    for (auto& w : masses) w /= s;
  } else {
    GemDraw g = sample_gem(params, truncation, rng);
    masses = std::move(g.sticks);
    out.residual = g.residual;
  }
  out.atoms.reserve(masses.size());
  for (double w : masses) out.atoms.push_back({static_cast<Label>(base(rng)), w});
  return out;
}

/// (Xi(J_1), ..., Xi(J_n)) for a partition of the type space with
/// nu0(J_i) = a_i, from increments of the tempered-stable subordinator
/// sigma(gamma(alpha, theta) t). theta = 0 uses untempered stable increments,
/// the limit of the ratio as theta -> 0.
std::vector<double> sample_finite_marginals_via_subordinator(const PdParams& params,
                                                             std::span<const double> cell_masses,
                                                             RngStream& rng);

/// Positive alpha-stable S with E exp(-l S) = exp(-c l^alpha).
double sample_positive_stable(double alpha, double c, RngStream& rng);

/// Increment of the subordinator with Levy measure x^{-1-alpha} e^{-x} dx
/// over a time span tau.
double sample_tempered_stable_increment(double alpha, double tau, RngStream& rng);

inline constexpr long kTemperedRetryCap = 1000000;

// ---------------------------------------------------------------------------
// Ensembles

/// Monte Carlo estimates of E[u] for each monomial from `draws` ranked
/// samples. Draws are grouped in fixed chunks with their own stream ids and
/// reduced in chunk order, so Serial and Parallel agree bit-for-bit.
std::vector<stats::MeanAccumulator> ranked_moment_ensemble(const PdParams& params,
                                                           const std::vector<Monomial>& monomials,
                                                           std::size_t draws, int truncation,
                                                           std::uint64_t seed,
                                                           Execution mode = Execution::Parallel);

inline constexpr std::size_t kEnsembleChunks = 256;

/// Evaluates a monomial on ranked weights (the residual carries no atoms).
double evaluate_monomial(const Monomial& m, const RankedWeights& w);

/// CSV with columns w1..wK,residual; shorter rows are zero-padded.
void write_weights_csv(std::ostream& os, const std::vector<RankedWeights>& rows);

}  // namespace pdlab
