// Serial reference vs OpenMP for the parallel kernels. Both modes produce
// bit-identical results; only wall time should differ.

#include <benchmark/benchmark.h>

#include "pdlab/diffusion.hpp"
#include "pdlab/partitions.hpp"
#include "pdlab/powersum.hpp"
#include "pdlab/sampling.hpp"

using namespace pdlab;

namespace {

Execution mode_of(const benchmark::State& s) { return s.range(0) ? Execution::Parallel : Execution::Serial; }

void label(benchmark::State& s) { s.SetLabel(s.range(0) ? "openmp" : "serial"); }

void BM_EpsfSums(benchmark::State& s) {
  const auto p = PdParams::make(0.5, 0.5);
  for (auto _ : s) benchmark::DoNotOptimize(epsf_sums(p, 40, mode_of(s)).total);
  label(s);
}

void BM_RankedMoments(benchmark::State& s) {
  const auto p = PdParams::make(0.5, 0.5);
  auto monos = monomials_up_to_degree(4);
  monos.erase(monos.begin());
  for (auto _ : s) benchmark::DoNotOptimize(ranked_moment_ensemble(p, monos, 2000, 500, 1, mode_of(s)));
  label(s);
}

void BM_UnlabeledEnsemble(benchmark::State& s) {
  const auto p = PdParams::make(0.5, 0.5);
  UnlabeledConfig cfg;
  cfg.t_end = 0.2;
  const UnlabeledSimulator sim(p, cfg);
  const double cps[] = {0.1, 0.2};
  const int orders[] = {2, 3};
  auto start = [](RngStream&) { return RankedWeights{{1.0}, 0.0}; };
  for (auto _ : s) benchmark::DoNotOptimize(unlabeled_moment_ensemble(sim, start, cps, orders, 200, 1, mode_of(s)));
  label(s);
}

void BM_TwoTypeOccupation(benchmark::State& s) {
  const auto tt = TwoTypeParams::make(PdParams::make(0.5, 0.0), 0.5);
  TwoTypeConfig cfg;
  cfg.t_end = 20.0;
  const TwoTypeSimulator sim(tt, cfg);
  for (auto _ : s) benchmark::DoNotOptimize(two_type_occupation_ensemble(sim, 0.5, 1.0, 1.0, 32, 1, mode_of(s)));
  label(s);
}

void BM_UpdownCounts(benchmark::State& s) {
  const auto p = PdParams::make(0.5, 0.5);
  for (auto _ : s) benchmark::DoNotOptimize(updown_final_counts(p, 5, 50, 4000, 1, mode_of(s)));
  label(s);
}

}  // namespace

BENCHMARK(BM_EpsfSums)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RankedMoments)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_UnlabeledEnsemble)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TwoTypeOccupation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_UpdownCounts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
