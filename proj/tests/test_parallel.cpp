#include <catch_amalgamated.hpp>

#include "bardina/attractor.hpp"
#include "bardina/dynamics.hpp"
#include "bardina/fields.hpp"
#include "bardina/operators.hpp"
#include "bardina/parallel.hpp"
#include "bardina/stationary.hpp"
#include "bardina/transform.hpp"
#include "oracle/oracle.hpp"

using namespace bardina;

namespace {

GridSpec grid(int n) {
  GridSpec g;
  g.n = n;
  return g;
}

template <class F>
auto both(F f) {
  set_thread_count(4);
  ScopedExecution s(Exec::serial);
  auto a = f();
  set_execution(Exec::parallel);
  auto b = f();
  return std::pair{a, b};
}

VectorField band(const GridSpec& g, double amp, std::uint64_t seed) {
  FieldRecipe r;
  r.kind = FieldKind::random_band;
  r.amplitude = amp;
  r.seed = seed;
  r.k_min = 1;
  r.k_max = 4;
  return generate(r, g);
}

}  // namespace

TEST_CASE("parallel kernels reproduce the serial reference bitwise") {
  const GridSpec g = grid(24);
  const VectorField u = band(g, 2.0, 3);
  const PhysParams p{0.8, 1.0, 0.1, 1.0};

  SECTION("transforms") {
    const auto [a, b] = both([&] { return inverse_transform(u); });
    CHECK(a == b);
    const auto [c, d] = both([&] { return forward_transform(a, g); });
    CHECK(c == d);
  }
  SECTION("field generation") {
    const auto [a, b] = both([&] { return band(g, 1.0, 11); });
    CHECK(a == b);
  }
  SECTION("nonlinear term and pressure") {
    const auto [a, b] = both([&] { return nonlinear_term(u, p.alpha); });
    CHECK(a == b);
    const auto [c, d] = both([&] { return pressure_from_velocity(u, p.alpha); });
    CHECK(c == d);
  }
  SECTION("reductions") {
    const auto [a, b] = both([&] { return norms(u, p.alpha); });
    CHECK(a.l2_sq == b.l2_sq);
    CHECK(a.h1dot_sq == b.h1dot_sq);
    CHECK(a.h2dot_sq == b.h2dot_sq);
    CHECK(a.h1alpha_sq == b.h1alpha_sq);
    const VectorField w = band(g, 1.0, 4);
    const auto [c, d] = both([&] { return h1alpha_inner(u, w, p.alpha); });
    CHECK(c == d);
    const auto [e, f] = both([&] { return max_speed(u); });
    CHECK(e == f);
    const auto [x, y] = both([&] { return lp_norm(u, 3.0); });
    CHECK(x == y);
  }
  SECTION("time stepping") {
    const VectorField f = band(g, 0.5, 5);
    const auto [a, b] = both([&] {
      SimState s{u, 0.0, p, f};
      evolve(s, 0.05, 0.005, 1);
      return s.u;
    });
    CHECK(a == b);
  }
  SECTION("tangent transport and Lyapunov sums") {
    const auto [a, b] = both([&] {
      SimState s{u, 0.0, p, VectorField(g)};
      OrthoFrame fr = random_frame(g, 2, 1, p.alpha);
      const Stepper st(g, p, 0.005);
      for (int k = 0; k < 3; ++k) st.step_with_tangents(s, fr.w);
      return lyapunov_sum(orthonormalize(fr.w, p.alpha), s.u, p);
    });
    CHECK(a == b);
  }
  SECTION("stationary solve") {
    const auto [a, b] = both([&] { return solve_stationary(band(g, 0.5, 6), p, {}).U; });
    CHECK(a == b);
  }
}

TEST_CASE("thread count is configurable") {
  set_thread_count(3);
  CHECK(thread_count() == 3);
  set_thread_count(1);
  CHECK(thread_count() == 1);
}
