#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bardina/field.hpp"

namespace bardina {

/// P div((-alpha^2 Laplacian + I)^{-1} (u (x) u)) with u dealiased before the
/// pointwise products and the result dealiased again. Divergence-free.
VectorField nonlinear_term(const VectorField& u, double alpha);

struct SimState {
  VectorField u;
  double t = 0.0;
  PhysParams params;
  VectorField force;
};

struct DiagnosticsSample {
  double t = 0.0;
  NormBundle norms;
  double force_pairing = 0.0;  // [f, u]_alpha
  double dissipation = 0.0;    // nu (|u|^2_H1dot + alpha^2 |u|^2_H2dot)
  double damping = 0.0;        // beta |u|^2_H1alpha
};

DiagnosticsSample diagnostics(const SimState& state);

/// Time-ordered samples with running trapezoid integrals of the budget
/// terms. Entry k of each integral covers [t_0, t_k].
struct Trajectory {
  std::vector<DiagnosticsSample> samples;
  std::vector<double> dissipation_integral;
  std::vector<double> damping_integral;
  std::vector<double> force_integral;

  /// Throws std::invalid_argument unless s.t exceeds the last sample time.
  void append(const DiagnosticsSample& s);
  std::size_t size() const { return samples.size(); }
};

/// Advective cap 0.5 * (L / n) / max|u|; +infinity for u = 0.
double cfl_cap(const VectorField& u);

/// Second-order exponential time differencing (ETD2RK). The linear symbol
/// -nu |k|^2 - beta is integrated exactly; the force and the nonlinear term
/// enter through phi_1 and phi_2 weights. Weights are tabulated once per
/// (grid, params, dt).
class Stepper {
 public:
  Stepper(const GridSpec& grid, const PhysParams& params, double dt);

  /// One step. Throws BlowUpError on non-finite values or when dt exceeds
  /// the advective cap of the current state.
  void step(SimState& state) const;

  /// One step of the state together with tangent vectors w obeying
  /// dw/dt = L(u(t)) w, the linearization along the same trajectory.
  void step_with_tangents(SimState& state, std::vector<VectorField>& tangents) const;

  double dt() const { return dt_; }
  static double phi1(double z);
  static double phi2(double z);

 private:
  void check_cap(double speed, double t) const;
  void advance(SimState& state, std::vector<VectorField>* tangents) const;

  GridSpec grid_;
  PhysParams params_;
  double dt_;
  std::vector<double> expo_, w1_, w2_;
};

SimState step(SimState state, double dt);

/// Called at every sample with the current state.
using Observer = std::function<void(const SimState&)>;

/// Advances with a fixed dt, sampling at the start, every `sample_every`
/// steps, and at the end. The step count is round((t_end - t) / dt), so the
/// final time lies within dt/2 of t_end.
Trajectory evolve(SimState& state, double t_end, double dt, int sample_every, const Observer& observer = {});

/// Relative energy-budget residual at each sample,
/// [E(t) - E(0) + 2 int(dissipation + damping - force_pairing)] / max(E(0), 1).
std::vector<double> energy_budget_residual(const Trajectory& traj);

struct EnvelopeReport {
  bool pass = true;
  double tolerance = 0.0;        // allowed negative slack, 1e-12 E(0)
  double min_decay_slack = 0.0;  // min over samples of the pointwise envelope slack
  double min_window_slack = 0.0; // min over sample windows of the integral envelope slack
  std::vector<double> decay_slack;
};

/// Pointwise envelope E(t) <= E(0) e^{-beta t} + (4 / beta^2) |f|^2 and the
/// window envelope nu int |u|^2_H1dot + alpha^2 int |u|^2_H2dot
/// <= (2T / beta) |f|^2 + E(t) over every pair of samples.
EnvelopeReport decay_envelope_check(const Trajectory& traj, const VectorField& force, const PhysParams& params);

struct BallEntry {
  double radius_sq = 0.0;       // (8 / beta^2) |f|^2_H1alpha
  bool already_inside = false;
  bool degenerate = false;      // zero force: radius 0
  std::optional<double> entry_time;
  std::optional<double> analytic_bound;  // (1/beta) ln(beta^2 E(0) / (4 |f|^2))
  bool within_bound = true;
};

BallEntry absorbing_ball_entry(const Trajectory& traj, const VectorField& force, const PhysParams& params);

}  // namespace bardina
