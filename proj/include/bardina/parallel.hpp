#pragma once

#include <numeric>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bardina {

/// Execution policy for the per-mode and per-point kernels. `serial` is the
/// reference path; `parallel` distributes x-slabs across OpenMP threads. Both
/// run the identical per-slab body, and reductions combine per-slab partial
/// sums in slab order, so results are bitwise identical across policies and
/// thread counts.
enum class Exec { serial, parallel };

Exec execution();
void set_execution(Exec exec);

/// RAII override of the process-wide execution policy.
class ScopedExecution {
 public:
  explicit ScopedExecution(Exec exec) : saved_(execution()) { set_execution(exec); }
  ~ScopedExecution() { set_execution(saved_); }
  ScopedExecution(const ScopedExecution&) = delete;
  ScopedExecution& operator=(const ScopedExecution&) = delete;

 private:
  Exec saved_;
};

int thread_count();
void set_thread_count(int threads);

/// Reads BARDINA_THREADS and applies it when set to a positive integer.
/// Returns the thread count in effect afterwards.
int apply_thread_env();

template <class Body>
void for_each_slab(int slabs, Body&& body) {
#ifdef _OPENMP
  if (execution() == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < slabs; ++i) body(i);
    return;
  }
#endif
  for (int i = 0; i < slabs; ++i) body(i);
}

template <class Body>
double sum_over_slabs(int slabs, Body&& body) {
  std::vector<double> partial(static_cast<std::size_t>(slabs), 0.0);
  for_each_slab(slabs, [&](int i) { partial[static_cast<std::size_t>(i)] = body(i); });
  return std::accumulate(partial.begin(), partial.end(), 0.0);
}

template <class Body>
double max_over_slabs(int slabs, Body&& body) {
  std::vector<double> partial(static_cast<std::size_t>(slabs), 0.0);
  for_each_slab(slabs, [&](int i) { partial[static_cast<std::size_t>(i)] = body(i); });
  double m = 0.0;
  for (double v : partial) m = v > m ? v : m;
  return m;
}

}  // namespace bardina
