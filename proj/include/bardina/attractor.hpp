#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bardina/dynamics.hpp"
#include "bardina/field.hpp"

namespace bardina {

enum class Regime { positive, zero, negative };
std::string to_string(Regime r);

struct EtaReport {
  double eta_value = 0.0;
  Regime regime = Regime::negative;
};

/// eta = eta_c |f|_H1alpha / (alpha^{5/2} beta) - beta. The regime is the
/// exact sign of the computed value, so it is conditional on eta_c.
EtaReport eta(const PhysParams& params, double f_norm);

/// (3 / 5^{5/3}) (16 pi^{3/2} Gamma(7/2) / Gamma(5))^{2/3}, about 1.09558.
double lieb_thirring_constant();

struct DimensionBound {
  double c_lt = 0.0;
  double c_abn = 0.0;
  double bound = 0.0;
};

/// c(alpha, beta, nu) = (1/beta) [2 C^4 / (nu^{12/5} alpha^{6/5}) 2^{16/5} / alpha^{14/5} + 3 / (4 beta)]
/// and bound = c max(|f|^{14/5}, |f|^2).
DimensionBound dimension_bound(const PhysParams& params, double f_norm);

/// -P((w.grad)u + (u.grad)w)_alpha + nu Laplacian w - beta w, with the
/// transport evaluated in divergence form from dealiased products.
VectorField linearized_rhs(const VectorField& w, const VectorField& u, const PhysParams& params);

struct OrthoFrame {
  std::vector<VectorField> w;
  double alpha = 1.0;
};

/// Largest |G - I| entry of the Gram matrix in [.,.]_alpha.
double gram_deviation(const std::vector<VectorField>& fields, double alpha);

/// Modified Gram-Schmidt (two passes) in [.,.]_alpha. Throws
/// std::invalid_argument on an empty list or rank-deficient input.
OrthoFrame orthonormalize(std::vector<VectorField> fields, double alpha);

/// m random_band fields (shell 1 <= |m| <= k_max, seeds seed, seed+1, ...)
/// orthonormalized. Zero-mean so that the Lieb-Thirring step applies.
OrthoFrame random_frame(const GridSpec& grid, int m, std::uint64_t seed, double alpha, int k_max = 3);

/// sum_i [L w_i, w_i]_alpha. Rejects frames with Gram deviation above 1e-8.
double lyapunov_sum(const OrthoFrame& frame, const VectorField& u, const PhysParams& params);

/// -beta m + 2 C^4 / (nu^{12/5} alpha^{6/5}) |u|_H1dot^{14/5} + (3/8) alpha^2 |u|^2_H2dot.
double lyapunov_bound_rhs(const VectorField& u, const PhysParams& params, int m);

struct GapSeries {
  std::vector<double> t;
  std::vector<double> gap_sq;  // |u_a - u_b|^2_H1alpha
};

/// Two simulations advanced in lockstep with the same dt.
GapSeries trajectory_gap(const VectorField& u0_a, const VectorField& u0_b, const VectorField& force_a,
                         const VectorField& force_b, const PhysParams& params, double t_end, double dt,
                         int sample_every);

struct GapCheck {
  bool orbitally_stable = true;  // g(t) <= g(0) (1 + 1e-10) at all samples
  double max_ratio = 0.0;        // max g(t) / g(0)
  std::optional<double> fitted_rate;  // least-squares slope of log g
  bool pass = true;
};

/// Orbital stability is asserted when eta <= 0, exponential decay with a
/// negative fitted rate when eta < 0. Samples at or below `floor` are left
/// out of the fit.
GapCheck check_gap(const GapSeries& series, const EtaReport& eta, double floor = 0.0);

/// Least-squares slope of log(y) against t over entries with y > floor
/// and t >= t_from. Empty when fewer than two points qualify.
std::optional<double> fit_log_slope(const std::vector<double>& t, const std::vector<double>& y, double t_from,
                                    double floor);

/// L^p norm of |u| by uniform quadrature on the physical grid; p = infinity
/// gives the maximum.
double lp_norm(const VectorField& u, double p);

struct SteadyConvergence {
  std::vector<double> t;
  std::vector<double> r;      // |u(t) - U|_H1alpha
  std::vector<double> r_inf;  // max_x |u(t) - U|
  std::vector<double> energy; // |u(t)|^2_H1alpha
  double envelope_c = 0.0;    // C fitted at the first sample with t >= 1
  double min_envelope_slack = 0.0;
  std::optional<double> ball_entry;
  double floor = 0.0;
  bool monotone = true;
  bool envelope_ok = true;
  bool pass = true;
};

/// Runs u from u0 under `force`, compares with the steady state U. r(t) must
/// decrease strictly between samples after absorbing-ball entry until it
/// falls below floor = 1e-9 max(|U|_H1alpha, 1); R(t) <= C t^{-3/4} for t >= 1.
SteadyConvergence steady_convergence(const VectorField& u0, const VectorField& force, const PhysParams& params,
                                     const VectorField& U, double t_end, double dt, int sample_every);

struct LpDecay {
  double p = 2.0;  // infinity for the max norm
  std::vector<double> norm;
  double envelope_c = 0.0;
  double envelope_rate = 0.0;  // 2 beta / p
  double min_slack = 0.0;
  std::optional<double> fitted_rate;
  bool envelope_ok = true;
};

struct ZeroForceDecay {
  std::vector<double> t;
  std::vector<LpDecay> per_p;
  bool pass = true;
};

/// f = 0 run; for each p the envelope C_p e^{-(2 beta / p) t}, with C_p
/// fitted at the first sample with t >= 1, must hold at all later samples.
ZeroForceDecay zero_force_decay(const VectorField& u0, const PhysParams& params, double t_end, double dt,
                                int sample_every, const std::vector<double>& p_list);

}  // namespace bardina
