#include <catch_amalgamated.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "bardina/dynamics.hpp"
#include "bardina/errors.hpp"
#include "bardina/fields.hpp"
#include "bardina/operators.hpp"
#include "oracle/oracle.hpp"

using namespace bardina;

namespace {

constexpr double kPi = std::numbers::pi;

GridSpec grid(int n, double L = 2.0 * kPi) {
  GridSpec g;
  g.n = n;
  g.box_len = L;
  return g;
}

VectorField shear(const GridSpec& g, double amp) {
  FieldRecipe r;
  r.kind = FieldKind::shear;
  r.amplitude = amp;
  return generate(r, g);
}

VectorField band(const GridSpec& g, double amp, std::uint64_t seed, double alpha, int k_min = 1, int k_max = 3) {
  FieldRecipe r;
  r.kind = FieldKind::random_band;
  r.amplitude = amp;
  r.seed = seed;
  r.k_min = k_min;
  r.k_max = k_max;
  return generate(r, g, alpha);
}

VectorField zero(const GridSpec& g) {
  VectorField z(g);
  z.div_free = true;
  return z;
}

}  // namespace

TEST_CASE("nonlinear term") {
  const GridSpec g = grid(8);
  SECTION("vanishes for zero velocity") { CHECK(max_abs_coeff(nonlinear_term(zero(g), 1.0)) == 0.0); }
  SECTION("vanishes for a shear field") { CHECK(max_abs_coeff(nonlinear_term(shear(g, 3.0), 0.5)) <= 1e-15); }
  SECTION("matches the convolution oracle") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const VectorField u = oracle::random_solenoidal(g, seed);
      const double alpha = 0.3 + 0.2 * static_cast<double>(seed);
      const VectorField got = nonlinear_term(u, alpha);
      CHECK(oracle::rel_diff(got, oracle::nonlinear(u, alpha)) <= 1e-10);
      CHECK(got.div_free);
      CHECK(max_divergence(got) <= 1e-12);
      CHECK(dealias(got) == got);
      CHECK(hermitian_defect(got) == 0.0);
    }
  }
}

TEST_CASE("one step of a shear mode is the exact exponential decay") {
  const GridSpec g = grid(16, 3.0);
  PhysParams p{0.7, 0.4, 0.3, 1.0};
  SimState s{shear(g, 1.5), 0.0, p, zero(g)};
  const VectorField u0 = s.u;
  const double dt = 0.01;
  const SimState next = step(s, dt);
  const double k = 2.0 * kPi / g.box_len;
  const VectorField expect = std::exp(-(p.nu * k * k + p.beta) * dt) * u0;
  CHECK(max_abs_diff(next.u, expect) <= 1e-13);
  CHECK(next.t == dt);
}

TEST_CASE("zero state with zero force stays zero") {
  const GridSpec g = grid(8);
  SimState s{zero(g), 0.0, PhysParams{}, zero(g)};
  evolve(s, 0.1, 0.01, 1);
  CHECK(max_abs_coeff(s.u) == 0.0);
}

TEST_CASE("integrator converges at second order") {
  const GridSpec g = grid(16);
  PhysParams p{1.0, 0.5, 0.05, 1.0};
  const VectorField u0 = band(g, 3.0, 4, p.alpha);
  const VectorField f = band(g, 1.0, 5, p.alpha, 1, 2);
  const double T = 0.5;
  auto run = [&](double dt) {
    SimState s{u0, 0.0, p, f};
    evolve(s, T, dt, 1000000);
    return s.u;
  };
  const double dt = 0.05;
  const VectorField ref = run(dt / 64);
  const double e1 = h1alpha_norm(run(dt) - ref, p.alpha);
  const double e2 = h1alpha_norm(run(dt / 2) - ref, p.alpha);
  const double e3 = h1alpha_norm(run(dt / 4) - ref, p.alpha);
  const double order1 = std::log2(e1 / e2);
  const double order2 = std::log2(e2 / e3);
  INFO("errors " << e1 << " " << e2 << " " << e3);
  CHECK(order1 >= 1.8);
  CHECK(order1 <= 2.2);
  CHECK(order2 >= 1.8);
  CHECK(order2 <= 2.2);
}

TEST_CASE("evolve sampling and composition") {
  const GridSpec g = grid(16);
  PhysParams p{0.8, 1.0, 0.1, 1.0};
  const VectorField u0 = band(g, 2.0, 9, p.alpha);
  const VectorField f = band(g, 0.5, 10, p.alpha, 1, 2);
  SECTION("t_end equal to the start gives a single sample") {
    SimState s{u0, 0.0, p, f};
    const Trajectory tr = evolve(s, 0.0, 0.01, 5);
    CHECK(tr.size() == 1);
    CHECK(s.u == u0);
  }
  SECTION("semigroup property with aligned steps") {
    SimState a{u0, 0.0, p, f};
    evolve(a, 0.2, 0.01, 7);
    evolve(a, 0.5, 0.01, 3);
    SimState b{u0, 0.0, p, f};
    evolve(b, 0.5, 0.01, 10);
    CHECK(max_abs_diff(a.u, b.u) <= 1e-12);
    CHECK(a.t == Catch::Approx(0.5).margin(1e-14));
  }
  SECTION("samples at start, every k steps, and at the end") {
    SimState s{u0, 0.0, p, f};
    const Trajectory tr = evolve(s, 0.105, 0.01, 4);
    REQUIRE(tr.size() == 4);
    CHECK(tr.samples[1].t == Catch::Approx(0.04));
    CHECK(tr.samples.back().t == Catch::Approx(0.11));
    CHECK(std::abs(s.t - 0.105) <= 0.01);
  }
  SECTION("divergence stays at roundoff over a run") {
    SimState s{u0, 0.0, p, f};
    double worst = 0.0;
    evolve(s, 1.0, 0.01, 10, [&](const SimState& st) { worst = std::max(worst, max_divergence(st.u)); });
    CHECK(worst <= 1e-10);
    CHECK(s.u.div_free);
    CHECK(hermitian_defect(s.u) <= 1e-14);
  }
}

TEST_CASE("shear decay matches the closed form at every sample") {
  const GridSpec g = grid(16);
  PhysParams p{1.0, 0.5, 0.2, 1.0};
  const VectorField u0 = shear(g, 2.0);
  SimState s{u0, 0.0, p, zero(g)};
  const double k = 1.0;
  double worst = 0.0;
  evolve(s, 2.0, 1e-3, 50, [&](const SimState& st) {
    const VectorField expect = std::exp(-(p.nu * k * k + p.beta) * st.t) * u0;
    worst = std::max(worst, max_abs_diff(st.u, expect));
  });
  CHECK(worst <= 1e-10);
}

TEST_CASE("trajectory integrals are trapezoid sums of the samples") {
  const GridSpec g = grid(8);
  PhysParams p{1.0, 1.0, 0.5, 1.0};
  SimState s{band(g, 1.0, 3, 1.0, 1, 2), 0.0, p, band(g, 0.3, 4, 1.0, 1, 2)};
  const Trajectory tr = evolve(s, 0.3, 0.01, 3);
  double acc = 0.0;
  for (std::size_t k = 1; k < tr.size(); ++k) {
    acc += 0.5 * (tr.samples[k].t - tr.samples[k - 1].t) * (tr.samples[k].damping + tr.samples[k - 1].damping);
    CHECK(std::abs(tr.damping_integral[k] - acc) <= 1e-14 * std::max(1.0, acc));
  }
  Trajectory bad = tr;
  CHECK_THROWS_AS(bad.append(tr.samples.front()), std::invalid_argument);
}

TEST_CASE("energy budget residual") {
  SECTION("zero trajectory") {
    const GridSpec g = grid(8);
    SimState s{zero(g), 0.0, PhysParams{}, zero(g)};
    for (double r : energy_budget_residual(evolve(s, 0.1, 0.01, 1))) CHECK(r == 0.0);
  }
  SECTION("shear decay residual is quadrature error of order dt^2") {
    const GridSpec g = grid(16);
    PhysParams p{1.0, 1.0, 1.0, 1.0};
    auto worst = [&](double dt) {
      SimState s{shear(g, 1.0), 0.0, p, zero(g)};
      double w = 0.0;
      for (double r : energy_budget_residual(evolve(s, 1.0, dt, 1))) w = std::max(w, std::abs(r));
      return w;
    };
    const double r1 = worst(0.01), r2 = worst(0.005);
    CHECK(r1 <= 1e-3);
    CHECK(std::log2(r1 / r2) == Catch::Approx(2.0).margin(0.1));
  }
}

TEST_CASE("decay envelopes") {
  const GridSpec g = grid(16);
  PhysParams p{1.0, 1.0, 0.5, 1.0};
  SECTION("zero force") {
    SimState s{band(g, 3.0, 1, 1.0), 0.0, p, zero(g)};
    const Trajectory tr = evolve(s, 3.0, 0.01, 5);
    const EnvelopeReport r = decay_envelope_check(tr, s.force, p);
    CHECK(r.pass);
    CHECK(r.min_decay_slack >= 0.0);
    for (std::size_t k = 1; k < tr.size(); ++k) {
      CHECK(tr.samples[k].norms.h1alpha_sq < tr.samples[k - 1].norms.h1alpha_sq);
    }
  }
  SECTION("zero initial data stays below (4/beta^2)|f|^2") {
    SimState s{zero(g), 0.0, p, band(g, 2.0, 2, 1.0, 1, 2)};
    const Trajectory tr = evolve(s, 3.0, 0.01, 5);
    const double cap = 4.0 / (p.beta * p.beta) * norms(s.force, 1.0).h1alpha_sq;
    for (const auto& smp : tr.samples) CHECK(smp.norms.h1alpha_sq <= cap);
    CHECK(decay_envelope_check(tr, s.force, p).pass);
  }
  SECTION("forced random run") {
    SimState s{band(g, 2.0, 3, 1.0), 0.0, p, band(g, 1.0, 4, 1.0, 1, 2)};
    const Trajectory tr = evolve(s, 10.0, 0.01, 10);
    const EnvelopeReport r = decay_envelope_check(tr, s.force, p);
    CHECK(r.pass);
  }
}

TEST_CASE("absorbing ball entry") {
  const GridSpec g = grid(16);
  PhysParams p{1.0, 1.0, 0.5, 1.0};
  const VectorField f = band(g, 1.0, 6, 1.0, 1, 2);
  SECTION("already inside") {
    SimState s{zero(g), 0.0, p, f};
    const BallEntry b = absorbing_ball_entry(evolve(s, 0.1, 0.01, 1), f, p);
    CHECK(b.already_inside);
    CHECK(b.entry_time.value() == 0.0);
  }
  SECTION("zero force is the degenerate case") {
    SimState s{band(g, 1.0, 7, 1.0), 0.0, p, zero(g)};
    const BallEntry b = absorbing_ball_entry(evolve(s, 0.5, 0.01, 1), s.force, p);
    CHECK(b.degenerate);
    CHECK_FALSE(b.entry_time.has_value());
    CHECK(b.radius_sq == 0.0);
  }
  SECTION("entry before the analytic bound") {
    const double radius_sq = 8.0 / (p.beta * p.beta) * norms(f, 1.0).h1alpha_sq;
    SimState s{band(g, std::sqrt(10.0 * radius_sq), 8, 1.0), 0.0, p, f};
    const BallEntry b = absorbing_ball_entry(evolve(s, 5.0, 0.01, 1), f, p);
    REQUIRE(b.entry_time.has_value());
    REQUIRE(b.analytic_bound.has_value());
    CHECK(*b.analytic_bound == Catch::Approx(std::log(2.0 * 10.0)).epsilon(1e-12));
    CHECK(*b.entry_time <= *b.analytic_bound);
    CHECK(b.within_bound);
  }
}

TEST_CASE("step size cap and blow-up reporting") {
  const GridSpec g = grid(16);
  PhysParams p{1.0, 1.0, 0.1, 1.0};
  SimState s{band(g, 50.0, 1, 1.0), 0.0, p, zero(g)};
  const double cap = cfl_cap(s.u);
  REQUIRE(std::isfinite(cap));
  CHECK_THROWS_AS(step(s, 1.5 * cap), BlowUpError);
  CHECK_NOTHROW(step(s, 0.5 * cap));
  SimState bad = s;
  bad.u[0].at_mode(1, 0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(step(bad, 1e-4), BlowUpError);
  CHECK(cfl_cap(zero(g)) == std::numeric_limits<double>::infinity());
}

TEST_CASE("phi functions are continuous across the series threshold") {
  for (double z : {-1e-4, 1e-4}) {
    const double below = z * (1 - 1e-9), above = z * (1 + 1e-9);
    CHECK(Stepper::phi1(below) == Catch::Approx(Stepper::phi1(above)).epsilon(1e-12));
    CHECK(Stepper::phi2(below) == Catch::Approx(Stepper::phi2(above)).epsilon(1e-10));
  }
  CHECK(Stepper::phi1(0.0) == 1.0);
  CHECK(Stepper::phi2(0.0) == 0.5);
  CHECK(Stepper::phi1(-2.0) == Catch::Approx((std::exp(-2.0) - 1.0) / -2.0).epsilon(1e-15));
}
