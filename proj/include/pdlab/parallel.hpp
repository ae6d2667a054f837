#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pdlab {

/// Worker count for Monte Carlo replicas: PDLAB_THREADS if set, otherwise
/// the OpenMP default. Always 1 without OpenMP.
inline int worker_count() {
#ifdef _OPENMP
  if (const char* env = std::getenv("PDLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Runs body(i) for i in [0, n). Iterations must write only to slot i of
/// their output so that results are independent of the schedule.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
#ifdef _OPENMP
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

/// The serial reference used to check parallel kernels bit-for-bit.
template <class Body>
void serial_for(std::size_t n, Body&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

enum class Execution { Serial, Parallel };

template <class Body>
void run_indexed(Execution mode, std::size_t n, Body&& body) {
  if (mode == Execution::Parallel)
    parallel_for(n, body);
  else
    serial_for(n, body);
}

}  // namespace pdlab
