#include <catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "bardina/fields.hpp"
#include "bardina/operators.hpp"
#include "bardina/transform.hpp"
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

SpectralField from_coeffs(const GridSpec& g, const oracle::Coeffs& c) {
  SpectralField f(g);
  std::copy(c.begin(), c.end(), f.coeffs().begin());
  return f;
}

VectorField random_vector(const GridSpec& g, std::uint64_t seed, int band = 3) {
  VectorField v(g);
  for (int c = 0; c < 3; ++c) v[c] = from_coeffs(g, oracle::random_coeffs(g.n, band, seed * 7 + static_cast<std::uint64_t>(c)));
  return v;
}

// Scalar field sampled from f(x, y, z) on the grid.
template <class F>
SpectralField sampled(const GridSpec& g, F f) {
  std::vector<double> s(g.size());
  const double h = g.spacing();
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int l = 0; l < g.n; ++l) s[g.index(i, j, l)] = f(i * h, j * h, l * h);
  return forward_transform(s, g);
}

double max_abs(const SpectralField& f) {
  double m = 0.0;
  for (const auto& z : f.coeffs()) m = std::max(m, std::abs(z));
  return m;
}

double max_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t p = 0; p < a.coeffs().size(); ++p) m = std::max(m, std::abs(a.coeffs()[p] - b.coeffs()[p]));
  return m;
}

}  // namespace

TEST_CASE("helmholtz filter leaves constants alone") {
  const GridSpec g = grid(8);
  SpectralField c(g);
  c.at_mode(0, 0, 0) = 3.5;
  CHECK(helmholtz_filter(c, 2.0) == c);
}

TEST_CASE("helmholtz filter halves the first mode when alpha |k| = 1") {
  const double L = 3.0;
  const GridSpec g = grid(8, L);
  const SpectralField f = sampled(g, [&](double x, double, double) { return std::cos(2.0 * kPi * x / L); });
  const SpectralField out = helmholtz_filter(f, L / (2.0 * kPi));
  SpectralField half = f;
  half *= 0.5;
  CHECK(max_diff(out, half) <= 1e-15);
}

TEST_CASE("helmholtz filter matches the per-mode oracle") {
  const GridSpec g = grid(8, 5.0);
  const auto c = oracle::random_coeffs(8, 3, 21);
  const SpectralField out = helmholtz_filter(from_coeffs(g, c), 0.7);
  const SpectralField ref = from_coeffs(g, oracle::filter(c, 8, 5.0, 0.7));
  CHECK(max_diff(out, ref) <= 1e-12 * max_abs(ref));
}

TEST_CASE("helmholtz filter keeps the div_free certificate and Hermitian symmetry") {
  const GridSpec g = grid(16);
  const VectorField u = oracle::random_solenoidal(g, 5);
  const VectorField f = helmholtz_filter(u, 0.3);
  CHECK(f.div_free);
  CHECK(hermitian_defect(f) <= 1e-15);
}

TEST_CASE("leray projection annihilates gradients") {
  const GridSpec g = grid(8);
  const SpectralField s = sampled(g, [](double x, double, double) { return std::sin(x); });
  const VectorField out = leray_project(gradient(s));
  CHECK(out.div_free);
  CHECK(max_abs_coeff(out) <= 1e-15);
}

TEST_CASE("leray projection leaves a shear field unchanged") {
  const GridSpec g = grid(8);
  FieldRecipe r;
  r.kind = FieldKind::shear;
  r.amplitude = 1.3;
  const VectorField u = generate(r, g);
  CHECK(max_abs_diff(leray_project(u), u) <= 1e-16);
}

TEST_CASE("leray projection matches the componentwise oracle") {
  const GridSpec g = grid(8, 4.0);
  const VectorField v = random_vector(g, 3);
  std::array<oracle::Coeffs, 3> in;
  for (int c = 0; c < 3; ++c) in[static_cast<std::size_t>(c)].assign(v[c].coeffs().begin(), v[c].coeffs().end());
  const auto ref = oracle::leray(in, 8, 4.0);
  const VectorField out = leray_project(v);
  VectorField expect(g);
  for (int c = 0; c < 3; ++c) expect[c] = from_coeffs(g, ref[static_cast<std::size_t>(c)]);
  CHECK(oracle::rel_diff(out, expect) <= 1e-12);
  CHECK(max_divergence(out) <= 1e-12);
  double div = 0.0;
  for (const auto& z : divergence(out).coeffs()) div = std::max(div, std::abs(z));
  CHECK(div <= 1e-12);
}

TEST_CASE("leray projection is idempotent and commutes with the filter") {
  const GridSpec g = grid(16);
  const VectorField v = random_vector(g, 9, 5);
  const VectorField p = leray_project(v);
  CHECK(max_abs_diff(leray_project(p), p) <= 1e-13);
  const VectorField a = helmholtz_filter(leray_project(v), 0.8);
  const VectorField b = leray_project(helmholtz_filter(v, 0.8));
  CHECK(max_abs_diff(a, b) <= 1e-13);
  const VectorField s = oracle::random_solenoidal(g, 2);
  CHECK(max_abs_diff(leray_project(s), s) <= 1e-12 * std::max(1.0, max_abs_coeff(s)));
}

TEST_CASE("derivative operators") {
  const double L = 2.5;
  const GridSpec g = grid(8, L);
  const double k = 2.0 * kPi / L;
  SECTION("laplacian of sin is an eigenfunction") {
    const SpectralField s = sampled(g, [&](double x, double, double) { return std::sin(k * x); });
    SpectralField expect = s;
    expect *= -k * k;
    CHECK(max_diff(laplacian(s), expect) <= 1e-13);
  }
  SECTION("gradient of a constant vanishes") {
    SpectralField c(g);
    c.at_mode(0, 0, 0) = 2.0;
    CHECK(max_abs_coeff(gradient(c)) == 0.0);
  }
  SECTION("divergence of gradient equals the laplacian") {
    const SpectralField f = from_coeffs(g, oracle::random_coeffs(8, 3, 4));
    CHECK(max_diff(divergence(gradient(f)), laplacian(f)) <= 1e-12 * max_abs(laplacian(f)));
  }
  SECTION("the Nyquist slot carries k = 0 so real fields stay real") {
    SpectralField f(g);
    f.at_mode(-4, 1, 0) = Complex(1.0, 0.5);
    f.at_mode(-4, -1, 0) = Complex(1.0, -0.5);
    REQUIRE(hermitian_defect(f) == 0.0);
    const VectorField gr = gradient(f);
    CHECK(hermitian_defect(gr) == 0.0);
    CHECK(gr[0].at_mode(-4, 1, 0) == Complex(0.0, 0.0));
  }
}

TEST_CASE("dealias keeps exactly the retained index set") {
  const GridSpec g = grid(16);
  const VectorField v = random_vector(g, 1, 7);
  const VectorField d = dealias(v);
  const double cut = g.dealias_fraction * g.n / 2.0;
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int l = 0; l < g.n; ++l) {
          const int m[3] = {g.mode_of(i), g.mode_of(j), g.mode_of(l)};
          const bool keep = std::abs(m[0]) <= cut && std::abs(m[1]) <= cut && std::abs(m[2]) <= cut;
          REQUIRE(d[c](i, j, l) == (keep ? v[c](i, j, l) : Complex(0.0, 0.0)));
        }
  SpectralField low(g);
  low.at_mode(2, -3, 1) = 1.0;
  CHECK(dealias(low) == low);
  SpectralField high(g);
  high.at_mode(6, 0, 0) = 1.0;
  CHECK(max_abs(dealias(high)) == 0.0);
}

TEST_CASE("norms of a single sine mode") {
  const double L = 3.0;
  const GridSpec g = grid(8, L);
  const double k = 2.0 * kPi / L;
  VectorField u(g);
  u[0] = sampled(g, [&](double x, double, double) { return std::sin(k * x); });
  const NormBundle b = norms(u, 0.4);
  const double vol = L * L * L;
  CHECK(b.l2_sq == Catch::Approx(vol / 2).epsilon(1e-14));
  CHECK(b.h1dot_sq == Catch::Approx(k * k * vol / 2).epsilon(1e-14));
  CHECK(b.h2dot_sq == Catch::Approx(k * k * k * k * vol / 2).epsilon(1e-14));
  CHECK(b.h1alpha_sq == b.l2_sq + 0.4 * 0.4 * b.h1dot_sq);
  const NormBundle z = norms(VectorField(g), 1.0);
  CHECK((z.l2_sq == 0.0 && z.h1dot_sq == 0.0 && z.h2dot_sq == 0.0 && z.h1alpha_sq == 0.0));
}

TEST_CASE("Parseval: quadrature of |v|^2 equals l2_sq") {
  const GridSpec g = grid(16, 4.0);
  const VectorField v = oracle::random_solenoidal(g, 8);
  const auto phys = inverse_transform(v);
  double sum = 0.0;
  for (int c = 0; c < 3; ++c)
    for (double x : phys[static_cast<std::size_t>(c)]) sum += x * x;
  const double h = g.spacing();
  CHECK(sum * h * h * h == Catch::Approx(norms(v, 1.0).l2_sq).epsilon(1e-10));
}

TEST_CASE("h1alpha inner product") {
  const GridSpec g = grid(8, 2.0);
  SECTION("disjoint single modes are orthogonal") {
    VectorField a(g), b(g);
    a[0].at_mode(0, 1, 0) = Complex(0.0, -0.5);
    a[0].at_mode(0, -1, 0) = Complex(0.0, 0.5);
    b[1].at_mode(1, 0, 1) = 0.5;
    b[1].at_mode(-1, 0, -1) = 0.5;
    CHECK(h1alpha_inner(a, b, 0.7) == 0.0);
  }
  SECTION("matches norms and a direct Parseval oracle") {
    const VectorField v = random_vector(g, 4);
    const VectorField w = random_vector(g, 5);
    const double alpha = 0.6;
    CHECK(h1alpha_inner(v, v, alpha) == Catch::Approx(norms(v, alpha).h1alpha_sq).epsilon(1e-12));
    double ref = 0.0;
    const double unit = 2.0 * kPi / g.box_len;
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int l = 0; l < g.n; ++l) {
          const int mi = g.mode_of(i), mj = g.mode_of(j), ml = g.mode_of(l);
          const double k2 = unit * unit * (mi * mi + mj * mj + ml * ml);
          for (int c = 0; c < 3; ++c) ref += (1 + alpha * alpha * k2) * (v[c](i, j, l) * std::conj(w[c](i, j, l))).real();
        }
    ref *= g.volume();
    CHECK(std::abs(h1alpha_inner(v, w, alpha) - ref) <= 1e-12 * std::abs(ref));
    CHECK(h1alpha_inner(v, w, alpha) == Catch::Approx(h1alpha_inner(w, v, alpha)).epsilon(1e-14));
  }
}

TEST_CASE("pressure recovery") {
  const GridSpec g = grid(16);
  SECTION("zero velocity gives zero pressure") { CHECK(max_abs(pressure_from_velocity(VectorField(g), 1.0)) == 0.0); }
  SECTION("shear flow has zero pressure") {
    FieldRecipe r;
    r.kind = FieldKind::shear;
    r.amplitude = 2.0;
    CHECK(max_abs(pressure_from_velocity(generate(r, g), 0.5)) <= 1e-15);
  }
  SECTION("grad p balances the gradient part of the filtered stress divergence") {
    const double alpha = 0.7;
    const VectorField u = oracle::random_solenoidal(g, 6);
    const SpectralField p = pressure_from_velocity(u, alpha);
    // div((u (x) u)_alpha) from the advective oracle without the projection.
    const auto phys = inverse_transform(u);
    const auto tensor = forward_batch(symmetric_products(phys, phys), g);
    std::vector<SpectralField> t = tensor;
    for (auto& c : t) dealias_in_place(c);
    VectorField div(g);
    const Wavenumbers kw(g);
    const int idx[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int l = 0; l < g.n; ++l) {
          const double k[3] = {kw.k[static_cast<std::size_t>(i)], kw.k[static_cast<std::size_t>(j)], kw.k[static_cast<std::size_t>(l)]};
          const double filt = 1.0 / (1.0 + alpha * alpha * (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]));
          for (int r = 0; r < 3; ++r) {
            Complex acc = 0.0;
            for (int c = 0; c < 3; ++c) acc += Complex(0.0, k[c]) * t[static_cast<std::size_t>(idx[r][c])](i, j, l);
            div[r](i, j, l) = filt * acc;
          }
        }
    const VectorField gradient_part = div - leray_project(div);
    // The momentum balance needs grad p = -(I - P) div((u (x) u)_alpha).
    const VectorField gp = gradient(p);
    CHECK(max_abs_diff(gp, -1.0 * gradient_part) <= 1e-10 * std::max(1.0, max_abs_coeff(gradient_part)));
    CHECK(max_abs_coeff(gradient_part) > 1e-3);
  }
}

TEST_CASE("hermitian helpers and certificates") {
  const GridSpec g = grid(8);
  VectorField v(g);
  v[0].at_mode(1, 2, 0) = Complex(1.0, 1.0);
  CHECK(hermitian_defect(v) > 0.0);
  hermitian_symmetrize(v);
  CHECK(hermitian_defect(v) == 0.0);
  VectorField w(g);
  w[0].at_mode(1, 0, 0) = 1.0;
  w[0].at_mode(-1, 0, 0) = 1.0;
  CHECK_FALSE(certify_div_free(w));
  VectorField s = oracle::random_solenoidal(g, 1);
  s.div_free = false;
  CHECK(certify_div_free(s));
}
