#include "bardina/stationary.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bardina/dynamics.hpp"
#include "bardina/operators.hpp"
#include "mode_loop.hpp"

namespace bardina {

VectorField stationary_map(const VectorField& U, const VectorField& force, const PhysParams& params) {
  require_same_grid(U.grid(), force.grid());
  const GridSpec& g = U.grid();
  const VectorField nl = nonlinear_term(U, params.alpha);
  const Wavenumbers kw(g);
  VectorField out(g);
  detail::for_each_mode(g, [&](int i, int j, int l, std::size_t p) {
    const double inv = 1.0 / (params.nu * kw.squared(i, j, l) + params.beta);
    for (int c = 0; c < 3; ++c) out[c].coeffs()[p] = inv * (force[c].coeffs()[p] - nl[c].coeffs()[p]);
  });
  out.div_free = force.div_free;
  return out;
}

double stationary_energy_slack(const VectorField& U, const VectorField& force, const PhysParams& params) {
  const double f2 = norms(force, params.alpha).h1alpha_sq;
  const NormBundle nu = norms(U, params.alpha);
  return 2.0 / (params.beta * params.beta) * f2 -
         (nu.h1alpha_sq + params.nu * params.alpha * params.alpha * nu.h2dot_sq);
}

StationaryResult solve_stationary(const VectorField& force, const PhysParams& params, const StationaryOptions& opts) {
  params.validate();
  if (!(opts.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (!(opts.omega > 0.0 && opts.omega <= 1.0)) throw std::invalid_argument("omega must lie in (0, 1]");
  if (opts.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");

  StationaryResult res;
  VectorField U(force.grid());
  U.div_free = true;
  double omega = opts.omega;
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= opts.max_iter; ++it) {
    const VectorField TU = stationary_map(U, force, params);
    const double r = h1alpha_norm(U - TU, params.alpha);
    res.residual_history.push_back(r);
    res.iterations = it;
    res.residual = r;
    if (!std::isfinite(r)) break;
    if (r <= opts.tol) {
      res.converged = true;
      break;
    }
    if (r > previous) omega *= 0.5;
    previous = r;
    U *= 1.0 - omega;
    U += omega * TU;
    U.div_free = TU.div_free;
  }
  res.U = U;
  res.final_omega = omega;
  res.energy_slack = stationary_energy_slack(res.U, force, params);
  return res;
}

double stationary_residual_pde(const VectorField& U, const VectorField& force, const PhysParams& params) {
  require_same_grid(U.grid(), force.grid());
  const GridSpec& g = U.grid();
  const VectorField nl = nonlinear_term(U, params.alpha);
  const Wavenumbers kw(g);
  VectorField r(g);
  detail::for_each_mode(g, [&](int i, int j, int l, std::size_t p) {
    const double sym = params.nu * kw.squared(i, j, l) + params.beta;
    for (int c = 0; c < 3; ++c) {
      r[c].coeffs()[p] = sym * U[c].coeffs()[p] + nl[c].coeffs()[p] - force[c].coeffs()[p];
    }
  });
  return std::sqrt(norms(r, params.alpha).l2_sq);
}

double stationary_operator_bound(const GridSpec& grid, const PhysParams& params) {
  const Wavenumbers kw(grid);
  return detail::max_modes(grid, [&](int i, int j, int l, std::size_t) {
    if (!grid.retained(grid.mode_of(i), grid.mode_of(j), grid.mode_of(l))) return 0.0;
    return params.nu * kw.squared(i, j, l) + params.beta;
  });
}

}  // namespace bardina
