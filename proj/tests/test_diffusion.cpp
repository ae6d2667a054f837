#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "oracles.hpp"
#include "pdlab/diffusion.hpp"
#include "pdlab/powersum.hpp"
#include "pdlab/sampling.hpp"

using namespace pdlab;

namespace {

using Parts = std::vector<int>;

Parts normalized(Parts p) {
  std::erase(p, 0);
  std::sort(p.begin(), p.end(), std::greater<>());
  return p;
}

// Up (urn insertion) then down (uniform box removal), by direct enumeration.
std::map<Parts, double> updown_row(double alpha, double theta, const Parts& lam) {
  const int n = std::accumulate(lam.begin(), lam.end(), 0);
  std::map<Parts, double> up;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    Parts mu = lam;
    ++mu[i];
    up[normalized(mu)] += (lam[i] - alpha) / (n + theta);
  }
  Parts fresh = lam;
  fresh.push_back(1);
  const double new_row = theta + lam.size() * alpha;
  if (new_row > 0) up[normalized(fresh)] += new_row / (n + theta);
  std::map<Parts, double> out;
  for (const auto& [mu, pu] : up)
    for (std::size_t i = 0; i < mu.size(); ++i) {
      Parts nu = mu;
      --nu[i];
      out[normalized(nu)] += pu * mu[i] / (n + 1.0);
    }
  return out;
}

}  // namespace

TEST_CASE("unlabeled drift") {
  const double x[] = {1.0};
  CHECK(unlabeled_drift(PdParams::make(0.5, 0.5), x)[0] == -0.5);
  const double y[] = {0.6, 0.3};
  const auto b = unlabeled_drift(PdParams::make(0.2, 1.5), y);
  CHECK(std::abs(b[0] + (1.5 * 0.6 + 0.2) / 2) < 1e-15);
  CHECK(std::abs(b[1] + (1.5 * 0.3 + 0.2) / 2) < 1e-15);
}

TEST_CASE("up/down transition matrix") {
  for (auto [a, t] : {std::pair{0.5, 0.5}, {0.0, 1.0}, {0.3, 2.0}, {0.7, -0.3}, {-0.5, 2.0}}) {
    const auto params = PdParams::make(a, t);
    for (int n = 1; n <= 8; ++n) {
      const auto tm = updown_transition_matrix(params, n);
      const std::size_t s = tm.states.size();
      for (std::size_t i = 0; i < s; ++i) {
        const auto ref = updown_row(a, t, tm.states[i].parts());
        double row = 0.0;
        for (std::size_t j = 0; j < s; ++j) {
          row += tm.at(i, j);
          auto it = ref.find(tm.states[j].parts());
          CHECK(std::abs(tm.at(i, j) - (it == ref.end() ? 0.0 : it->second)) < 1e-14);
        }
        CAPTURE(a); CAPTURE(t); CAPTURE(n); CAPTURE(i);
        CHECK(std::abs(row - 1.0) < 1e-13);
      }
      CHECK(detailed_balance_error(params, tm) < 1e-12);
    }
  }
  // m = 4 atoms: the five-block partition of 5 is off the support
  CHECK(updown_transition_matrix(PdParams::make(-0.5, 2.0), 5).states.size() == 6);
  const auto t3 = updown_transition_matrix(PdParams::make(0.5, 0.5), 3);
  REQUIRE(t3.states.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(std::abs(oracle::epsf(0.5, 0.5, t3.states[i].parts()) * t3.at(i, j) -
                     oracle::epsf(0.5, 0.5, t3.states[j].parts()) * t3.at(j, i)) < 1e-12);
}

TEST_CASE("updown_step") {
  RngStream rng(8);
  const auto p = PdParams::make(0.4, 0.9);
  IntegerPartition one({1});
  for (int i = 0; i < 50; ++i) CHECK(updown_step(p, one, rng) == one);
  IntegerPartition x({4, 2, 1});
  for (int i = 0; i < 1000; ++i) {
    x = updown_step(p, x, rng);
    CHECK(x.size() == 7);
  }
  // empirical shape law at n = 5
  const auto tm = updown_transition_matrix(p, 5);
  const int steps = updown_mixing_steps(p, tm);
  const std::size_t chains = 1000000 / steps;
  const auto counts = updown_final_counts(p, 5, steps, chains, 31);
  std::vector<double> expct;
  for (const auto& s : tm.states) expct.push_back(chains * epsf_probability(p, s));
  CHECK(stats::chi_square_statistic(counts, expct) < stats::chi_square_critical(int(expct.size()) - 1, 0.01));
}

TEST_CASE("unlabeled simulator invariants") {
  const auto p = PdParams::make(0.5, 0.5);
  UnlabeledConfig cfg;
  cfg.t_end = 0.5;
  const UnlabeledSimulator sim(p, cfg);
  RngStream a(5, 1), b(5, 1);
  const auto ta = sim.run(RankedWeights::make({1.0}, 0.0), a);
  const auto tb = sim.run(RankedWeights::make({1.0}, 0.0), b);
  REQUIRE(ta.times.size() == 501);
  for (std::size_t i = 0; i < ta.times.size(); ++i) {
    if (i) CHECK(ta.times[i] > ta.times[i - 1]);
    CHECK(std::abs(ta.states[i].total() - 1.0) < 1e-9);
    CHECK(std::is_sorted(ta.states[i].weights.rbegin(), ta.states[i].weights.rend()));
    CHECK(ta.states[i].weights == tb.states[i].weights);
  }
  UnlabeledConfig bad = cfg;
  bad.dt = 0.1;
  CHECK_THROWS_AS(UnlabeledSimulator(p, bad), DomainError);
  bad.dt = 0.0;
  CHECK_THROWS_AS(UnlabeledSimulator(p, bad), DomainError);
}

TEST_CASE("unlabeled moments track the ODE") {
  const auto p = PdParams::make(0.0, 1.0);
  UnlabeledConfig cfg;
  cfg.t_end = 0.34657;
  const UnlabeledSimulator sim(p, cfg);
  const double checkpoints[] = {0.34657};
  const int orders[] = {2};
  const auto acc = unlabeled_moment_ensemble(
      sim, [](RngStream&) { return RankedWeights::make({1.0}, 0.0); }, checkpoints, orders, 10000, 17);
  const double init[] = {1.0};
  const double exact = moment_ode_solution(p, 2, init, 0.34657);
  CHECK(std::abs(exact - 0.75) < 1e-5);
  CHECK(std::abs(acc[0][0].mean() - exact) <= 3 * acc[0][0].standard_error());
}

TEST_CASE("unlabeled simulator keeps PD stationary") {
  const auto p = PdParams::make(0.5, 0.5);
  UnlabeledConfig cfg;
  cfg.t_end = 0.5;
  const UnlabeledSimulator sim(p, cfg);
  const double checkpoints[] = {0.25, 0.5};
  const int orders[] = {2, 3};
  const auto acc = unlabeled_moment_ensemble(
      sim, [&](RngStream& r) { return sample_pd_ranked(p, 100, r); }, checkpoints, orders, 2000, 23);
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(acc[k][j].mean() - oracle::e_phi(0.5, 0.5, orders[j])) <= 3 * acc[k][j].standard_error());
}

TEST_CASE("selection") {
  const double x[] = {0.5, 0.3, 0.1};
  const double c = 1.7;
  double g[3], out[3];
  for (int i = 0; i < 3; ++i) g[i] = c * 2 * x[i];
  selection_increment(x, g, out);
  for (int i = 0; i < 3; ++i) {
    double ag = 0.0;
    for (int j = 0; j < 3; ++j) ag += x[i] * ((i == j) - x[j]) * g[j];
    CHECK(std::abs(out[i] - 0.5 * ag) < 1e-15);
  }

  // rho = 1 leaves trajectories bit-identical
  const auto p = PdParams::make(0.3, 1.0);
  UnlabeledConfig cfg;
  cfg.t_end = 0.2;
  const UnlabeledSimulator base(p, cfg);
  const auto flat = apply_selection(base, [](std::span<const double>, std::span<double> gr) {
    std::fill(gr.begin(), gr.end(), 0.0);
  });
  RngStream r1(3), r2(3);
  const auto t1 = base.run(RankedWeights::make({1.0}, 0.0), r1);
  const auto t2 = flat.run(RankedWeights::make({1.0}, 0.0), r2);
  for (std::size_t i = 0; i < t1.states.size(); ++i) CHECK(t1.states[i].weights == t2.states[i].weights);

  const auto tt = TwoTypeParams::make(PdParams::make(0.5, 0.0), 0.5);
  TwoTypeConfig tc;
  tc.t_end = 5.0;
  const TwoTypeSimulator s0(tt, tc);
  const auto s1 = apply_selection(s0, [](double) { return 0.0; });
  RngStream q1(4), q2(4);
  CHECK(s0.run(0.3, q1).states == s1.run(0.3, q2).states);
}

TEST_CASE("two-type simulator") {
  const auto tt = TwoTypeParams::make(PdParams::make(0.5, 0.0), 0.5);
  CHECK(std::abs(two_type_drift(tt, 0.5)) < 1e-15);
  CHECK_THROWS_AS(TwoTypeParams::make(PdParams::make(0.1, -0.05), 0.5), UnsupportedRegime);

  TwoTypeConfig cfg;
  cfg.t_end = 10.0;
  const TwoTypeSimulator sim(tt, cfg);
  RngStream rng(12);
  const auto tr = sim.run(0.2, rng);
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    CHECK(tr.states[i] >= 0.0);
    CHECK(tr.states[i] <= 1.0);
    if (i) CHECK(tr.times[i] > tr.times[i - 1]);
  }
  CHECK_THROWS_AS(sim.run(1.0, rng), DomainError);

  // short occupation test against the arcsine law
  TwoTypeConfig longer = cfg;
  longer.t_end = 210.0;
  const TwoTypeSimulator sim2(tt, longer);
  auto xs = two_type_occupation_ensemble(sim2, 0.5, 10.0, 10.0, 100, 2);
  CHECK(xs.size() == 2100);
  CHECK(stats::ks_statistic(xs, [](double x) { return 2 / std::numbers::pi * std::asin(std::sqrt(x)); }) <
        stats::ks_critical(xs.size(), 0.01));
}

TEST_CASE("parallel ensembles match serial bit-for-bit") {
  const auto p = PdParams::make(0.4, 0.8);
  UnlabeledConfig cfg;
  cfg.t_end = 0.1;
  const UnlabeledSimulator sim(p, cfg);
  const double cps[] = {0.05, 0.1};
  const int orders[] = {2, 3};
  auto start = [](RngStream&) { return RankedWeights::make({0.6, 0.4}, 0.0); };
  const auto s = unlabeled_moment_ensemble(sim, start, cps, orders, 64, 5, Execution::Serial);
  const auto q = unlabeled_moment_ensemble(sim, start, cps, orders, 64, 5, Execution::Parallel);
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j) {
      CHECK(s[k][j].mean() == q[k][j].mean());
      CHECK(s[k][j].variance() == q[k][j].variance());
    }

  const auto tt = TwoTypeParams::make(PdParams::make(0.3, 1.5), 0.4);
  TwoTypeConfig tc;
  tc.t_end = 20.0;
  const TwoTypeSimulator ts(tt, tc);
  CHECK(two_type_occupation_ensemble(ts, 0.5, 5.0, 5.0, 16, 3, Execution::Serial) ==
        two_type_occupation_ensemble(ts, 0.5, 5.0, 5.0, 16, 3, Execution::Parallel));

  CHECK(updown_final_counts(p, 6, 20, 500, 4, Execution::Serial) ==
        updown_final_counts(p, 6, 20, 500, 4, Execution::Parallel));
}

TEST_CASE("explore_hitting") {
  const auto p = PdParams::make(0.5, 1.0);
  UnlabeledConfig cfg;
  cfg.t_end = 0.05;
  cfg.record_every = 5;
  const auto rep = explore_hitting(UnlabeledSimulator(p, cfg), RankedWeights::make({1.0}, 0.0), 1, 0.05, 4, 1);
  CHECK(rep.records == 4 * 11);
  CHECK(rep.near >= 4);  // every path starts at x_1 = 1
  CHECK(rep.min_gap >= 0.0);
  CHECK_THROWS_AS(explore_hitting(UnlabeledSimulator(p, cfg), RankedWeights::make({1.0}, 0.0), 0, 0.05, 4, 1),
                  DomainError);
}
