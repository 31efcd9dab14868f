#pragma once

#include <vector>

#include "bardina/field.hpp"

namespace bardina {

/// T(U) = (-nu Laplacian + beta)^{-1} [f - P div((U (x) U)_alpha)].
VectorField stationary_map(const VectorField& U, const VectorField& force, const PhysParams& params);

struct StationaryResult {
  VectorField U;
  double residual = 0.0;          // |U - T(U)|_H1alpha
  int iterations = 0;
  double energy_slack = 0.0;      // (2/beta^2)|f|^2_H1alpha - (|U|^2_H1alpha + nu alpha^2 |U|^2_H2dot)
  bool converged = false;
  double final_omega = 1.0;
  std::vector<double> residual_history;
};

struct StationaryOptions {
  double omega = 1.0;  // initial relaxation in (0, 1]
  double tol = 1e-10;
  int max_iter = 200;
  friend bool operator==(const StationaryOptions&, const StationaryOptions&) = default;
};

/// Damped Picard iteration U <- (1 - omega) U + omega T(U) from U = 0.
/// omega is halved whenever the residual grows. Non-convergence is
/// reported through `converged` and the residual history, not thrown.
StationaryResult solve_stationary(const VectorField& force, const PhysParams& params, const StationaryOptions& opts);

/// |-nu Laplacian U + P div((U (x) U)_alpha) + beta U - f|_L2.
double stationary_residual_pde(const VectorField& U, const VectorField& force, const PhysParams& params);

/// (2/beta^2)|f|^2_H1alpha - (|U|^2_H1alpha + nu alpha^2 |U|^2_H2dot).
double stationary_energy_slack(const VectorField& U, const VectorField& force, const PhysParams& params);

/// max over retained modes of nu |k|^2 + beta.
double stationary_operator_bound(const GridSpec& grid, const PhysParams& params);

}  // namespace bardina
