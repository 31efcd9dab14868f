#include "bardina/fields.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "bardina/operators.hpp"

namespace bardina {

namespace {

// One-dimensional factor of a separable trigonometric product on the first
// harmonic: 1, cos(kx) or sin(kx).
enum class Factor { one, cos, sin };

Complex factor_coeff(Factor f, int m) {
  switch (f) {
    case Factor::one:
      return m == 0 ? 1.0 : 0.0;
    case Factor::cos:
      return (m == 1 || m == -1) ? 0.5 : 0.0;
    case Factor::sin:
      if (m == 1) return {0.0, -0.5};
      if (m == -1) return {0.0, 0.5};
      return 0.0;
  }
  return 0.0;
}

void add_separable(SpectralField& f, double amp, Factor fx, Factor fy, Factor fz) {
  for (int mx = -1; mx <= 1; ++mx)
    for (int my = -1; my <= 1; ++my)
      for (int mz = -1; mz <= 1; ++mz) {
        const Complex c = factor_coeff(fx, mx) * factor_coeff(fy, my) * factor_coeff(fz, mz);
        if (c != 0.0) f.at_mode(mx, my, mz) += amp * c;
      }
}

VectorField random_band(const FieldRecipe& r, const GridSpec& grid, double alpha) {
  VectorField v(grid);
  if (r.amplitude == 0.0) {
    v.div_free = true;
    return v;
  }
  std::mt19937_64 rng(r.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = grid.n;
  const long lo = static_cast<long>(r.k_min) * r.k_min;
  const long hi = static_cast<long>(r.k_max) * r.k_max;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const int mx = grid.mode_of(i), my = grid.mode_of(j), mz = grid.mode_of(l);
        const long m2 = static_cast<long>(mx) * mx + static_cast<long>(my) * my + static_cast<long>(mz) * mz;
        if (m2 < lo || m2 > hi) continue;
        for (int c = 0; c < 3; ++c) {
          const double re = normal(rng);
          const double im = normal(rng);
          v[c](i, j, l) = Complex(re, im);
        }
      }
  hermitian_symmetrize(v);
  v = leray_project(v);
  dealias_in_place(v);
  const double norm = h1alpha_norm(v, alpha);
  if (norm > 0.0) v *= r.amplitude / norm;
  return v;
}

}  // namespace

std::string to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::shear:
      return "shear";
    case FieldKind::taylor_green:
      return "taylor_green";
    case FieldKind::abc:
      return "abc";
    case FieldKind::random_band:
      return "random_band";
  }
  return "unknown";
}

FieldKind parse_field_kind(const std::string& name) {
  if (name == "shear") return FieldKind::shear;
  if (name == "taylor_green") return FieldKind::taylor_green;
  if (name == "abc") return FieldKind::abc;
  if (name == "random_band") return FieldKind::random_band;
  throw std::invalid_argument("unknown field kind '" + name + "'");
}

void FieldRecipe::validate(const GridSpec& grid) const {
  if (!std::isfinite(amplitude)) throw std::invalid_argument("amplitude must be finite");
  if (kind == FieldKind::random_band) {
    if (k_min < 0 || k_min > k_max) throw std::invalid_argument("band needs 0 <= k_min <= k_max");
    if (!(k_max < grid.cutoff())) {
      throw std::invalid_argument("k_max = " + std::to_string(k_max) + " is not below the dealias cutoff");
    }
  } else if (!grid.retained(1, 1, 1)) {
    throw std::invalid_argument("first harmonic is not retained on this grid");
  }
}

VectorField generate(const FieldRecipe& recipe, const GridSpec& grid, double alpha) {
  grid.validate();
  recipe.validate(grid);
  const double a = recipe.amplitude;
  VectorField v(grid);
  switch (recipe.kind) {
    case FieldKind::shear:
      add_separable(v[0], a, Factor::one, Factor::sin, Factor::one);
      break;
    case FieldKind::taylor_green:
      add_separable(v[0], a, Factor::sin, Factor::cos, Factor::cos);
      add_separable(v[1], -a, Factor::cos, Factor::sin, Factor::cos);
      break;
    case FieldKind::abc:
      add_separable(v[0], a, Factor::one, Factor::one, Factor::sin);
      add_separable(v[0], a, Factor::one, Factor::cos, Factor::one);
      add_separable(v[1], a, Factor::sin, Factor::one, Factor::one);
      add_separable(v[1], a, Factor::one, Factor::one, Factor::cos);
      add_separable(v[2], a, Factor::one, Factor::sin, Factor::one);
      add_separable(v[2], a, Factor::cos, Factor::one, Factor::one);
      break;
    case FieldKind::random_band:
      v = random_band(recipe, grid, alpha);
      break;
  }
  if (!certify_div_free(v)) throw std::logic_error("generated field failed the divergence check");
  return v;
}

}  // namespace bardina
