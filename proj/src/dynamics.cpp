#include "bardina/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bardina/errors.hpp"
#include "bardina/operators.hpp"
#include "bardina/transform.hpp"
#include "mode_loop.hpp"

namespace bardina {

namespace {

double max_speed_of(const PhysicalVector& phys) {
  const std::size_t size = phys[0].size();
  const int n = cubic_side(size);
  const std::size_t slab = size / static_cast<std::size_t>(n);
  return max_over_slabs(n, [&](int s) {
    double m = 0.0;
    const std::size_t begin = static_cast<std::size_t>(s) * slab;
    for (std::size_t p = begin; p < begin + slab; ++p) {
      const double v = std::sqrt(phys[0][p] * phys[0][p] + phys[1][p] * phys[1][p] + phys[2][p] * phys[2][p]);
      if (!(v <= m)) m = std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    }
    return m;
  });
}

struct Evaluated {
  VectorField nl;
  PhysicalVector phys;  // dealiased u in physical space
  double speed = 0.0;
};

Evaluated evaluate(const VectorField& u, double alpha) {
  Evaluated e;
  e.phys = inverse_transform(dealias(u));
  e.speed = max_speed_of(e.phys);
  e.nl = projected_filtered_divergence(forward_batch(symmetric_products(e.phys, e.phys), u.grid()), alpha);
  return e;
}

// P div((u w + w u)_alpha), the linearized transport of w along u.
VectorField transport(const PhysicalVector& u_phys, const VectorField& w, double alpha) {
  const auto w_phys = inverse_transform(dealias(w));
  VectorField out = projected_filtered_divergence(forward_batch(symmetric_products(u_phys, w_phys), w.grid()), alpha);
  out *= 2.0;
  return out;
}

bool all_finite(const VectorField& v) {
  const double bad = detail::max_modes(v.grid(), [&](int, int, int, std::size_t p) {
    for (int c = 0; c < 3; ++c) {
      const Complex z = v[c].coeffs()[p];
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return 1.0;
    }
    return 0.0;
  });
  return bad == 0.0;
}

}  // namespace

VectorField nonlinear_term(const VectorField& u, double alpha) { return evaluate(u, alpha).nl; }

DiagnosticsSample diagnostics(const SimState& s) {
  const auto& p = s.params;
  DiagnosticsSample d;
  d.t = s.t;
  d.norms = norms(s.u, p.alpha);
  d.force_pairing = h1alpha_inner(s.force, s.u, p.alpha);
  d.dissipation = p.nu * (d.norms.h1dot_sq + p.alpha * p.alpha * d.norms.h2dot_sq);
  d.damping = p.beta * d.norms.h1alpha_sq;
  return d;
}

void Trajectory::append(const DiagnosticsSample& s) {
  if (samples.empty()) {
    samples.push_back(s);
    dissipation_integral.push_back(0.0);
    damping_integral.push_back(0.0);
    force_integral.push_back(0.0);
    return;
  }
  const DiagnosticsSample& last = samples.back();
  if (!(s.t > last.t)) throw std::invalid_argument("trajectory sample times must increase strictly");
  const double h = 0.5 * (s.t - last.t);
  dissipation_integral.push_back(dissipation_integral.back() + h * (last.dissipation + s.dissipation));
  damping_integral.push_back(damping_integral.back() + h * (last.damping + s.damping));
  force_integral.push_back(force_integral.back() + h * (last.force_pairing + s.force_pairing));
  samples.push_back(s);
}

double cfl_cap(const VectorField& u) {
  const double speed = max_speed(u);
  if (speed == 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * u.grid().spacing() / speed;
}

double Stepper::phi1(double z) {
  if (std::abs(z) < 1e-4) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
  return std::expm1(z) / z;
}

double Stepper::phi2(double z) {
  if (std::abs(z) < 1e-4) return 0.5 + z / 6.0 + z * z / 24.0 + z * z * z / 120.0;
  return (std::expm1(z) - z) / (z * z);
}

Stepper::Stepper(const GridSpec& grid, const PhysParams& params, double dt)
    : grid_(grid), params_(params), dt_(dt), expo_(grid.size()), w1_(grid.size()), w2_(grid.size()) {
  grid.validate();
  params.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  const Wavenumbers kw(grid);
  detail::for_each_mode(grid, [&](int i, int j, int l, std::size_t p) {
    const double lambda = -params.nu * kw.squared(i, j, l) - params.beta;
    const double z = lambda * dt;
    expo_[p] = std::exp(z);
    w1_[p] = dt * phi1(z);
    w2_[p] = dt * phi2(z);
  });
}

void Stepper::check_cap(double speed, double t) const {
  if (!std::isfinite(speed)) throw BlowUpError(t, "non-finite velocity at t = " + std::to_string(t));
  if (speed > 0.0 && dt_ > 0.5 * grid_.spacing() / speed) {
    throw BlowUpError(t, "dt = " + std::to_string(dt_) + " exceeds the advective cap " +
                             std::to_string(0.5 * grid_.spacing() / speed) + " at t = " + std::to_string(t));
  }
}

void Stepper::step(SimState& s) const { advance(s, nullptr); }

void Stepper::step_with_tangents(SimState& s, std::vector<VectorField>& tangents) const { advance(s, &tangents); }

void Stepper::advance(SimState& s, std::vector<VectorField>* tangents) const {
  require_same_grid(s.u.grid(), grid_);
  require_same_grid(s.force.grid(), grid_);
  if (!(s.params == params_)) throw std::invalid_argument("stepper was built for different parameters");
  const double alpha = params_.alpha;
  const std::size_t count = tangents ? tangents->size() : 0;

  const Evaluated en = evaluate(s.u, alpha);
  check_cap(en.speed, s.t);
  std::vector<VectorField> tn(count);
  for (std::size_t q = 0; q < count; ++q) tn[q] = transport(en.phys, (*tangents)[q], alpha);

  // Stage: a = e^{z} u + h phi1 (f - NL(u)); tangents use N_w = -T(u, w).
  VectorField a(grid_);
  std::vector<VectorField> aw(count, VectorField(grid_));
  detail::for_each_mode(grid_, [&](int, int, int, std::size_t p) {
    for (int c = 0; c < 3; ++c) {
      const Complex nn = s.force[c].coeffs()[p] - en.nl[c].coeffs()[p];
      a[c].coeffs()[p] = expo_[p] * s.u[c].coeffs()[p] + w1_[p] * nn;
      for (std::size_t q = 0; q < count; ++q) {
        aw[q][c].coeffs()[p] = expo_[p] * (*tangents)[q][c].coeffs()[p] - w1_[p] * tn[q][c].coeffs()[p];
      }
    }
  });

  const Evaluated ea = evaluate(a, alpha);
  if (!std::isfinite(ea.speed)) throw BlowUpError(s.t, "non-finite stage velocity at t = " + std::to_string(s.t));
  std::vector<VectorField> ta(count);
  for (std::size_t q = 0; q < count; ++q) ta[q] = transport(ea.phys, aw[q], alpha);

  detail::for_each_mode(grid_, [&](int, int, int, std::size_t p) {
    for (int c = 0; c < 3; ++c) {
      s.u[c].coeffs()[p] = a[c].coeffs()[p] - w2_[p] * (ea.nl[c].coeffs()[p] - en.nl[c].coeffs()[p]);
      for (std::size_t q = 0; q < count; ++q) {
        (*tangents)[q][c].coeffs()[p] = aw[q][c].coeffs()[p] - w2_[p] * (ta[q][c].coeffs()[p] - tn[q][c].coeffs()[p]);
      }
    }
  });
  s.u.div_free = s.u.div_free && s.force.div_free;
  s.t += dt_;
  if (!all_finite(s.u)) throw BlowUpError(s.t, "non-finite coefficients at t = " + std::to_string(s.t));
}

SimState step(SimState state, double dt) {
  Stepper(state.u.grid(), state.params, dt).step(state);
  return state;
}

Trajectory evolve(SimState& state, double t_end, double dt, int sample_every, const Observer& observer) {
  if (sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");
  if (!(t_end >= state.t)) throw std::invalid_argument("t_end lies before the current time");
  const Stepper stepper(state.u.grid(), state.params, dt);
  const double t0 = state.t;
  const long steps = std::lround((t_end - t0) / dt);
  Trajectory traj;
  auto sample = [&] {
    traj.append(diagnostics(state));
    if (observer) observer(state);
  };
  sample();
  for (long k = 1; k <= steps; ++k) {
    stepper.step(state);
    state.t = t0 + static_cast<double>(k) * dt;
    if (k % sample_every == 0 || k == steps) sample();
  }
  return traj;
}

std::vector<double> energy_budget_residual(const Trajectory& traj) {
  std::vector<double> r(traj.size(), 0.0);
  if (traj.size() == 0) return r;
  const double e0 = traj.samples[0].norms.h1alpha_sq;
  const double scale = std::max(e0, 1.0);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double e = traj.samples[k].norms.h1alpha_sq;
    r[k] = (e - e0 + 2.0 * traj.dissipation_integral[k] + 2.0 * traj.damping_integral[k] -
            2.0 * traj.force_integral[k]) /
           scale;
  }
  return r;
}

EnvelopeReport decay_envelope_check(const Trajectory& traj, const VectorField& force, const PhysParams& params) {
  EnvelopeReport rep;
  if (traj.size() == 0) return rep;
  const double f2 = norms(force, params.alpha).h1alpha_sq;
  const double beta = params.beta;
  const double a2 = params.alpha * params.alpha;
  const auto& s = traj.samples;
  const double e0 = s[0].norms.h1alpha_sq;
  const double t0 = s[0].t;
  rep.tolerance = 1e-12 * e0;
  rep.min_decay_slack = std::numeric_limits<double>::infinity();
  rep.min_window_slack = std::numeric_limits<double>::infinity();
  rep.decay_slack.resize(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double bound = e0 * std::exp(-beta * (s[k].t - t0)) + 4.0 / (beta * beta) * f2;
    rep.decay_slack[k] = bound - s[k].norms.h1alpha_sq;
    rep.min_decay_slack = std::min(rep.min_decay_slack, rep.decay_slack[k]);
  }
  // Cumulative trapezoid integral of nu |u|^2_H1dot + alpha^2 |u|^2_H2dot.
  std::vector<double> cum(s.size(), 0.0);
  auto integrand = [&](const DiagnosticsSample& d) { return params.nu * d.norms.h1dot_sq + a2 * d.norms.h2dot_sq; };
  for (std::size_t k = 1; k < s.size(); ++k) {
    cum[k] = cum[k - 1] + 0.5 * (s[k].t - s[k - 1].t) * (integrand(s[k - 1]) + integrand(s[k]));
  }
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      const double window = s[b].t - s[a].t;
      const double slack = 2.0 * window / beta * f2 + s[a].norms.h1alpha_sq - (cum[b] - cum[a]);
      rep.min_window_slack = std::min(rep.min_window_slack, slack);
    }
  }
  if (s.size() < 2) rep.min_window_slack = 0.0;
  rep.pass = rep.min_decay_slack >= -rep.tolerance && rep.min_window_slack >= -rep.tolerance;
  return rep;
}

BallEntry absorbing_ball_entry(const Trajectory& traj, const VectorField& force, const PhysParams& params) {
  BallEntry out;
  const double f2 = norms(force, params.alpha).h1alpha_sq;
  const double beta = params.beta;
  out.radius_sq = 8.0 / (beta * beta) * f2;
  out.degenerate = f2 == 0.0;
  if (traj.size() == 0) return out;
  const double e0 = traj.samples[0].norms.h1alpha_sq;
  const double t0 = traj.samples[0].t;
  if (e0 <= out.radius_sq) {
    out.already_inside = true;
    out.entry_time = t0;
    return out;
  }
  if (!out.degenerate) out.analytic_bound = std::log(beta * beta * e0 / (4.0 * f2)) / beta;
  for (const auto& s : traj.samples) {
    if (s.norms.h1alpha_sq <= out.radius_sq) {
      out.entry_time = s.t;
      break;
    }
  }
  if (out.analytic_bound) {
    const double horizon = traj.samples.back().t - t0;
    if (out.entry_time) {
      out.within_bound = *out.entry_time - t0 <= *out.analytic_bound;
    } else {
      // Entry must have happened if the run extends past the analytic time.
      out.within_bound = horizon < *out.analytic_bound;
    }
  }
  return out;
}

}  // namespace bardina
