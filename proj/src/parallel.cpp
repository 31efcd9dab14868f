#include "bardina/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace bardina {

namespace {
std::atomic<Exec> g_exec{Exec::parallel};
}

Exec execution() { return g_exec.load(std::memory_order_relaxed); }
void set_execution(Exec exec) { g_exec.store(exec, std::memory_order_relaxed); }

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_thread_count(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

int apply_thread_env() {
  if (const char* env = std::getenv("BARDINA_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t > 0) set_thread_count(t);
    } catch (const std::exception&) {
      // ignored: a malformed override leaves the OpenMP default in place
    }
  }
  return thread_count();
}

}  // namespace bardina
