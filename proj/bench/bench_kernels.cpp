// Serial reference path against the OpenMP path for the hot kernels.
// Thread count follows OMP_NUM_THREADS / BARDINA_THREADS.

#include <benchmark/benchmark.h>

#include "bardina/dynamics.hpp"
#include "bardina/fields.hpp"
#include "bardina/operators.hpp"
#include "bardina/parallel.hpp"
#include "bardina/transform.hpp"

using namespace bardina;

namespace {

VectorField sample_field(int n) {
  GridSpec g;
  g.n = n;
  FieldRecipe r;
  r.kind = FieldKind::random_band;
  r.amplitude = 1.0;
  r.seed = 42;
  r.k_min = 1;
  r.k_max = 3;
  return generate(r, g);
}

Exec policy(const benchmark::State& state) { return state.range(1) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(1) == 0 ? "serial" : "parallel x" + std::to_string(thread_count()));
}

void BM_Transform(benchmark::State& state) {
  const VectorField u = sample_field(static_cast<int>(state.range(0)));
  ScopedExecution exec(policy(state));
  for (auto _ : state) {
    auto phys = inverse_transform(u);
    benchmark::DoNotOptimize(forward_transform(phys, u.grid()));
  }
  label(state);
}

void BM_NonlinearTerm(benchmark::State& state) {
  const VectorField u = sample_field(static_cast<int>(state.range(0)));
  ScopedExecution exec(policy(state));
  for (auto _ : state) benchmark::DoNotOptimize(nonlinear_term(u, 1.0));
  label(state);
}

void BM_Norms(benchmark::State& state) {
  const VectorField u = sample_field(static_cast<int>(state.range(0)));
  ScopedExecution exec(policy(state));
  for (auto _ : state) benchmark::DoNotOptimize(norms(u, 1.0));
  label(state);
}

void BM_Step(benchmark::State& state) {
  const VectorField u = sample_field(static_cast<int>(state.range(0)));
  PhysParams p;
  SimState s{u, 0.0, p, VectorField(u.grid())};
  s.force.div_free = true;
  ScopedExecution exec(policy(state));
  const Stepper stepper(u.grid(), p, 1e-3);
  for (auto _ : state) stepper.step(s);
  label(state);
}

void grid_args(benchmark::internal::Benchmark* b) {
  for (int n : {16, 32, 64})
    for (int par : {0, 1}) b->Args({n, par});
}

}  // namespace

BENCHMARK(BM_Transform)->Apply(grid_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_NonlinearTerm)->Apply(grid_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Norms)->Apply(grid_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Step)->Apply(grid_args)->Unit(benchmark::kMicrosecond);

int main(int argc, char** argv) {
  apply_thread_env();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
