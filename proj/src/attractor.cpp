#include "bardina/attractor.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bardina/fields.hpp"
#include "bardina/operators.hpp"
#include "bardina/transform.hpp"
#include "mode_loop.hpp"

namespace bardina {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::positive:
      return "positive";
    case Regime::zero:
      return "zero";
    case Regime::negative:
      return "negative";
  }
  return "unknown";
}

EtaReport eta(const PhysParams& params, double f_norm) {
  params.validate();
  if (!(f_norm >= 0.0)) throw std::invalid_argument("f_norm must be >= 0");
  EtaReport r;
  r.eta_value = params.eta_c * f_norm / (std::pow(params.alpha, 2.5) * params.beta) - params.beta;
  r.regime = r.eta_value > 0.0 ? Regime::positive : (r.eta_value < 0.0 ? Regime::negative : Regime::zero);
  return r;
}

double lieb_thirring_constant() {
  // 16 pi^{3/2} Gamma(7/2) / Gamma(5) with Gamma(7/2) = 15 sqrt(pi) / 8, Gamma(5) = 24.
  const double pi = std::numbers::pi;
  const double inner = 16.0 * (15.0 / 8.0) / 24.0 * pi * pi;
  return 3.0 / std::pow(5.0, 5.0 / 3.0) * std::pow(inner, 2.0 / 3.0);
}

DimensionBound dimension_bound(const PhysParams& params, double f_norm) {
  params.validate();
  if (!(f_norm >= 0.0)) throw std::invalid_argument("f_norm must be >= 0");
  const double a = params.alpha, b = params.beta, nu = params.nu;
  DimensionBound d;
  d.c_lt = lieb_thirring_constant();
  const double c4 = std::pow(d.c_lt, 4.0);
  d.c_abn = (2.0 * c4 / (std::pow(nu, 12.0 / 5.0) * std::pow(a, 6.0 / 5.0)) * std::pow(2.0, 16.0 / 5.0) /
                 std::pow(a, 14.0 / 5.0) +
             3.0 / (4.0 * b)) /
            b;
  d.bound = f_norm == 0.0 ? 0.0 : d.c_abn * std::max(std::pow(f_norm, 14.0 / 5.0), f_norm * f_norm);
  return d;
}

VectorField linearized_rhs(const VectorField& w, const VectorField& u, const PhysParams& params) {
  require_same_grid(w.grid(), u.grid());
  const GridSpec& g = w.grid();
  const auto up = inverse_transform(dealias(u));
  const auto wp = inverse_transform(dealias(w));
  const VectorField tr = projected_filtered_divergence(forward_batch(symmetric_products(up, wp), g), params.alpha);
  const Wavenumbers kw(g);
  VectorField out(g);
  detail::for_each_mode(g, [&](int i, int j, int l, std::size_t p) {
    const double lin = -params.nu * kw.squared(i, j, l) - params.beta;
    for (int c = 0; c < 3; ++c) out[c].coeffs()[p] = lin * w[c].coeffs()[p] - 2.0 * tr[c].coeffs()[p];
  });
  out.div_free = w.div_free;
  return out;
}

double gram_deviation(const std::vector<VectorField>& fields, double alpha) {
  double dev = 0.0;
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t j = i; j < fields.size(); ++j) {
      const double g = h1alpha_inner(fields[i], fields[j], alpha);
      dev = std::max(dev, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  return dev;
}

OrthoFrame orthonormalize(std::vector<VectorField> fields, double alpha) {
  if (fields.empty()) throw std::invalid_argument("cannot orthonormalize an empty family");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    VectorField& v = fields[i];
    const bool div_free = v.div_free;
    const double original = h1alpha_norm(v, alpha);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < i; ++j) {
        const double c = h1alpha_inner(v, fields[j], alpha);
        VectorField proj = c * fields[j];
        v -= proj;
      }
    }
    const double norm = h1alpha_norm(v, alpha);
    if (!(original > 0.0) || norm <= 1e-10 * original) {
      throw std::invalid_argument("family is rank deficient at member " + std::to_string(i));
    }
    v *= 1.0 / norm;
    v.div_free = div_free;
  }
  OrthoFrame f;
  f.w = std::move(fields);
  f.alpha = alpha;
  return f;
}

OrthoFrame random_frame(const GridSpec& grid, int m, std::uint64_t seed, double alpha, int k_max) {
  if (m < 1) throw std::invalid_argument("frame size must be >= 1");
  std::vector<VectorField> fields;
  for (int i = 0; i < m; ++i) {
    FieldRecipe r;
    r.kind = FieldKind::random_band;
    r.amplitude = 1.0;
    r.seed = seed + static_cast<std::uint64_t>(i);
    r.k_min = 1;
    r.k_max = k_max;
    fields.push_back(generate(r, grid, alpha));
  }
  return orthonormalize(std::move(fields), alpha);
}

double lyapunov_sum(const OrthoFrame& frame, const VectorField& u, const PhysParams& params) {
  if (frame.alpha != params.alpha) throw std::invalid_argument("frame was orthonormalized for a different alpha");
  const double dev = gram_deviation(frame.w, params.alpha);
  if (dev > 1e-8) throw std::invalid_argument("frame is not orthonormal (Gram deviation " + std::to_string(dev) + ")");
  double sum = 0.0;
  for (const auto& w : frame.w) sum += h1alpha_inner(linearized_rhs(w, u, params), w, params.alpha);
  return sum;
}

double lyapunov_bound_rhs(const VectorField& u, const PhysParams& params, int m) {
  const NormBundle nb = norms(u, params.alpha);
  const double c4 = std::pow(lieb_thirring_constant(), 4.0);
  const double a = params.alpha;
  return -params.beta * m +
         2.0 * c4 / (std::pow(params.nu, 12.0 / 5.0) * std::pow(a, 6.0 / 5.0)) * std::pow(nb.h1dot_sq, 7.0 / 5.0) +
         3.0 / 8.0 * a * a * nb.h2dot_sq;
}

GapSeries trajectory_gap(const VectorField& u0_a, const VectorField& u0_b, const VectorField& force_a,
                         const VectorField& force_b, const PhysParams& params, double t_end, double dt,
                         int sample_every) {
  if (sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");
  require_same_grid(u0_a.grid(), u0_b.grid());
  const Stepper stepper(u0_a.grid(), params, dt);
  SimState a{u0_a, 0.0, params, force_a};
  SimState b{u0_b, 0.0, params, force_b};
  GapSeries s;
  auto sample = [&](double t) {
    s.t.push_back(t);
    s.gap_sq.push_back(norms(a.u - b.u, params.alpha).h1alpha_sq);
  };
  const long steps = std::lround(t_end / dt);
  sample(0.0);
  for (long k = 1; k <= steps; ++k) {
    stepper.step(a);
    stepper.step(b);
    if (k % sample_every == 0 || k == steps) sample(static_cast<double>(k) * dt);
  }
  return s;
}

std::optional<double> fit_log_slope(const std::vector<double>& t, const std::vector<double>& y, double t_from,
                                    double floor) {
  double n = 0, st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] < t_from || !(y[k] > floor) || !(y[k] > 0.0)) continue;
    const double ly = std::log(y[k]);
    n += 1;
    st += t[k];
    sy += ly;
    stt += t[k] * t[k];
    sty += t[k] * ly;
  }
  if (n < 2) return std::nullopt;
  const double den = n * stt - st * st;
  if (den == 0.0) return std::nullopt;
  return (n * sty - st * sy) / den;
}

GapCheck check_gap(const GapSeries& s, const EtaReport& eta_report, double floor) {
  GapCheck c;
  if (s.gap_sq.empty()) return c;
  const double g0 = s.gap_sq[0];
  for (double g : s.gap_sq) {
    const double ratio = g0 > 0.0 ? g / g0 : (g > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    c.max_ratio = std::max(c.max_ratio, ratio);
    if (g > g0 * (1.0 + 1e-10)) c.orbitally_stable = false;
  }
  c.fitted_rate = fit_log_slope(s.t, s.gap_sq, 0.0, floor);
  c.pass = true;
  if (eta_report.regime != Regime::positive) c.pass = c.orbitally_stable;
  if (eta_report.regime == Regime::negative && g0 > 0.0) c.pass = c.pass && c.fitted_rate && *c.fitted_rate < 0.0;
  return c;
}

double lp_norm(const VectorField& u, double p) {
  const auto phys = inverse_transform(u);
  const int n = u.grid().n;
  const std::size_t slab = phys[0].size() / static_cast<std::size_t>(n);
  auto mag = [&](std::size_t q) {
    return std::sqrt(phys[0][q] * phys[0][q] + phys[1][q] * phys[1][q] + phys[2][q] * phys[2][q]);
  };
  if (std::isinf(p)) {
    return max_over_slabs(n, [&](int s) {
      double m = 0.0;
      for (std::size_t q = static_cast<std::size_t>(s) * slab; q < (static_cast<std::size_t>(s) + 1) * slab; ++q)
        m = std::max(m, mag(q));
      return m;
    });
  }
  if (!(p >= 1.0)) throw std::invalid_argument("L^p norm needs p >= 1");
  const double sum = sum_over_slabs(n, [&](int s) {
    double acc = 0.0;
    for (std::size_t q = static_cast<std::size_t>(s) * slab; q < (static_cast<std::size_t>(s) + 1) * slab; ++q)
      acc += std::pow(mag(q), p);
    return acc;
  });
  const double h = u.grid().spacing();
  return std::pow(sum * h * h * h, 1.0 / p);
}

SteadyConvergence steady_convergence(const VectorField& u0, const VectorField& force, const PhysParams& params,
                                     const VectorField& U, double t_end, double dt, int sample_every) {
  SteadyConvergence out;
  out.floor = 1e-9 * std::max(h1alpha_norm(U, params.alpha), 1.0);
  SimState st{u0, 0.0, params, force};
  Observer obs = [&](const SimState& s) {
    const VectorField d = s.u - U;
    out.t.push_back(s.t);
    out.r.push_back(h1alpha_norm(d, params.alpha));
    out.r_inf.push_back(lp_norm(d, std::numeric_limits<double>::infinity()));
    out.energy.push_back(norms(s.u, params.alpha).h1alpha_sq);
  };
  evolve(st, t_end, dt, sample_every, obs);

  const double radius_sq = 8.0 / (params.beta * params.beta) * norms(force, params.alpha).h1alpha_sq;
  std::size_t start = out.t.size();
  for (std::size_t k = 0; k < out.t.size(); ++k) {
    if (out.energy[k] <= radius_sq) {
      start = k;
      out.ball_entry = out.t[k];
      break;
    }
  }
  for (std::size_t k = start + 1; k < out.t.size(); ++k) {
    if (out.r[k - 1] > out.floor && !(out.r[k] < out.r[k - 1])) out.monotone = false;
  }
  // With r already at the floor nothing remains to decrease.
  if (!out.ball_entry && !out.r.empty() && out.r.front() > out.floor) out.monotone = false;

  out.min_envelope_slack = std::numeric_limits<double>::infinity();
  std::size_t fit = out.t.size();
  for (std::size_t k = 0; k < out.t.size(); ++k) {
    if (out.t[k] >= 1.0) {
      fit = k;
      break;
    }
  }
  if (fit < out.t.size()) {
    out.envelope_c = out.r_inf[fit] * std::pow(out.t[fit], 0.75);
    for (std::size_t k = fit; k < out.t.size(); ++k) {
      const double env = out.envelope_c * std::pow(out.t[k], -0.75);
      const double slack = env - out.r_inf[k];
      out.min_envelope_slack = std::min(out.min_envelope_slack, slack);
      if (slack < -1e-12 * std::max(out.envelope_c, 1.0)) out.envelope_ok = false;
    }
  } else {
    out.min_envelope_slack = 0.0;
  }
  out.pass = out.monotone && out.envelope_ok;
  return out;
}

ZeroForceDecay zero_force_decay(const VectorField& u0, const PhysParams& params, double t_end, double dt,
                                int sample_every, const std::vector<double>& p_list) {
  ZeroForceDecay out;
  for (double p : p_list) {
    if (!(std::isinf(p) || p >= 1.0)) throw std::invalid_argument("p must be >= 1 or infinity");
    LpDecay d;
    d.p = p;
    d.envelope_rate = std::isinf(p) ? 0.0 : 2.0 * params.beta / p;
    out.per_p.push_back(d);
  }
  VectorField zero(u0.grid());
  zero.div_free = true;
  SimState st{u0, 0.0, params, zero};
  Observer obs = [&](const SimState& s) {
    out.t.push_back(s.t);
    for (auto& d : out.per_p) d.norm.push_back(lp_norm(s.u, d.p));
  };
  evolve(st, t_end, dt, sample_every, obs);

  std::size_t fit = out.t.size();
  for (std::size_t k = 0; k < out.t.size(); ++k) {
    if (out.t[k] >= 1.0) {
      fit = k;
      break;
    }
  }
  for (auto& d : out.per_p) {
    d.min_slack = 0.0;
    if (fit < out.t.size()) {
      d.envelope_c = d.norm[fit] * std::exp(d.envelope_rate * out.t[fit]);
      d.min_slack = std::numeric_limits<double>::infinity();
      for (std::size_t k = fit; k < out.t.size(); ++k) {
        const double env = d.envelope_c * std::exp(-d.envelope_rate * out.t[k]);
        const double slack = env - d.norm[k];
        d.min_slack = std::min(d.min_slack, slack);
        if (slack < -1e-12 * std::max(d.envelope_c, 1e-300)) d.envelope_ok = false;
      }
    }
    d.fitted_rate = fit_log_slope(out.t, d.norm, 1.0, 0.0);
    out.pass = out.pass && d.envelope_ok;
  }
  return out;
}

}  // namespace bardina
