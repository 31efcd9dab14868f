#include "bardina/run.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "bardina/attractor.hpp"
#include "bardina/checkpoint.hpp"
#include "bardina/dynamics.hpp"
#include "bardina/errors.hpp"
#include "bardina/operators.hpp"
#include "bardina/parallel.hpp"

namespace bardina {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Check {
  std::string name;
  bool pass = true;
  double max_slack = 0.0;
  std::string series_file;
};

// Collects artifacts of one invocation.
class Outputs {
 public:
  Outputs(fs::path dir, const RunConfig& cfg) : dir_(std::move(dir)), cfg_(cfg) {}

  void write(const std::string& name, const std::string& body) {
    std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
    out << body;
    files_.push_back(name);
  }
  void checkpoint(const std::string& name, const VectorField& u, double time) {
    write_checkpoint(dir_ / name, u, cfg_.params, time);
    files_.push_back(name);
  }
  void add_check(Check c) { checks_.push_back(std::move(c)); }
  bool all_pass() const {
    for (const auto& c : checks_)
      if (!c.pass) return false;
    return true;
  }
  void write_report() {
    json arr = json::array();
    for (const auto& c : checks_) {
      arr.push_back({{"check_name", c.name},
                     {"params", params_json()},
                     {"pass", c.pass},
                     {"max_slack", c.max_slack},
                     {"series_file", c.series_file}});
    }
    write("report.json", arr.dump(2) + "\n");
  }
  json params_json() const {
    return {{"alpha", cfg_.params.alpha}, {"beta", cfg_.params.beta}, {"nu", cfg_.params.nu}, {"eta_c", cfg_.params.eta_c}};
  }
  void write_metadata(const std::string& subcommand, int exit_code) {
    const std::string effective = serialize_config(cfg_);
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ts;
    ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    json meta = {{"subcommand", subcommand},
                 {"version", kVersion},
                 {"config_hash", sha256_hex(effective)},
                 {"threads", thread_count()},
                 {"execution", execution() == Exec::serial ? "serial" : "parallel"},
                 {"exit_code", exit_code},
                 {"timestamp", ts.str()},
                 {"outputs", files_}};
    std::ofstream out(dir_ / "metadata.json", std::ios::trunc);
    out << meta.dump(2) << "\n";
  }

 private:
  fs::path dir_;
  const RunConfig& cfg_;
  std::vector<std::string> files_;
  std::vector<Check> checks_;
};

std::string csv_row(std::initializer_list<double> values) {
  std::string row;
  bool first = true;
  for (double v : values) {
    if (!first) row += ',';
    row += format_double(v);
    first = false;
  }
  row += '\n';
  return row;
}

void require_cfl(const RunConfig& cfg, const VectorField& u0) {
  const double cap = cfl_cap(u0);
  if (cfg.dt > cap) {
    throw ConfigError("[dynamics] dt", format_double(cfg.dt) + " exceeds the advective cap " + format_double(cap) +
                                           " of the initial field");
  }
}

bool row_due(std::size_t k, std::size_t last, int every) {
  return k % static_cast<std::size_t>(every) == 0 || k == last;
}

int cmd_simulate(const RunConfig& cfg, Outputs& out, std::ostream& log) {
  const GridSpec& g = cfg.grid;
  const double alpha = cfg.params.alpha;
  SimState st{generate(cfg.initial, g, alpha), 0.0, cfg.params, generate(cfg.force, g, alpha)};
  require_cfl(cfg, st.u);
  const VectorField force = st.force;
  // Budget integrals use every step; CSV rows follow sample_every.
  const Trajectory traj = evolve(st, cfg.t_end, cfg.dt, 1);
  const auto residual = energy_budget_residual(traj);

  std::string csv = "t,l2_sq,h1dot_sq,h2dot_sq,h1alpha_sq,dissipation,damping,force_pairing,energy_residual\n";
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    worst = std::max(worst, std::abs(residual[k]));
    if (!row_due(k, traj.size() - 1, cfg.sample_every)) continue;
    const auto& s = traj.samples[k];
    csv += csv_row({s.t, s.norms.l2_sq, s.norms.h1dot_sq, s.norms.h2dot_sq, s.norms.h1alpha_sq, s.dissipation, s.damping,
                    s.force_pairing, residual[k]});
  }
  out.write("trajectory.csv", csv);
  out.checkpoint("final_state.bin", st.u, st.t);

  const double energy_tol = 1e-6;
  out.add_check({"energy_budget", worst <= energy_tol, energy_tol - worst, "trajectory.csv"});
  const EnvelopeReport env = decay_envelope_check(traj, force, cfg.params);
  out.add_check({"decay_envelope", env.pass, std::min(env.min_decay_slack, env.min_window_slack), "trajectory.csv"});
  const BallEntry ball = absorbing_ball_entry(traj, force, cfg.params);
  double ball_slack = 0.0;
  if (ball.analytic_bound && ball.entry_time) ball_slack = *ball.analytic_bound - *ball.entry_time;
  out.add_check({"absorbing_ball", ball.within_bound, ball_slack, "trajectory.csv"});
  log << "simulate: " << traj.size() << " samples to t = " << format_double(st.t)
      << ", max |energy residual| = " << format_double(worst) << "\n";
  return kExitOk;
}

int cmd_stationary(const RunConfig& cfg, Outputs& out, std::ostream& log) {
  const VectorField force = generate(cfg.force, cfg.grid, cfg.params.alpha);
  const StationaryResult res = solve_stationary(force, cfg.params, cfg.stationary);
  std::string hist = "iteration,residual\n";
  for (std::size_t i = 0; i < res.residual_history.size(); ++i) {
    hist += std::to_string(i + 1) + "," + format_double(res.residual_history[i]) + "\n";
  }
  out.write("residual_history.csv", hist);
  out.checkpoint("stationary.bin", res.U, kSteadyStateTime);

  const double f2 = norms(force, cfg.params.alpha).h1alpha_sq;
  out.add_check({"fixed_point_residual", res.converged, cfg.stationary.tol - res.residual, "residual_history.csv"});
  out.add_check({"stationary_energy_estimate", res.energy_slack >= -1e-10 * f2, res.energy_slack, ""});
  const double pde = stationary_residual_pde(res.U, force, cfg.params);
  const double pde_tol = 10.0 * cfg.stationary.tol * stationary_operator_bound(cfg.grid, cfg.params);
  out.add_check({"stationary_pde_residual", pde <= pde_tol, pde_tol - pde, ""});
  log << "stationary: " << res.iterations << " iterations, residual " << format_double(res.residual)
      << (res.converged ? "" : " (not converged)") << "\n";
  return res.converged ? kExitOk : kExitNoConvergence;
}

int cmd_bound(const RunConfig& cfg, Outputs& out, std::ostream& log) {
  const VectorField force = generate(cfg.force, cfg.grid, cfg.params.alpha);
  const double f_norm = h1alpha_norm(force, cfg.params.alpha);
  const DimensionBound d = dimension_bound(cfg.params, f_norm);
  const EtaReport e = eta(cfg.params, f_norm);
  json j = {{"f_norm", f_norm},           {"c_lt", d.c_lt},       {"c_abn", d.c_abn},
            {"bound", d.bound},           {"eta", e.eta_value},   {"regime", to_string(e.regime)},
            {"params", out.params_json()}};
  out.write("bound.json", j.dump(2) + "\n");
  log << "bound: " << format_double(d.bound) << ", eta = " << format_double(e.eta_value) << " ("
      << to_string(e.regime) << ")\n";
  return kExitOk;
}

int cmd_lyapunov(const RunConfig& cfg, Outputs& out, std::ostream& log) {
  const GridSpec& g = cfg.grid;
  const double alpha = cfg.params.alpha;
  SimState st{generate(cfg.initial, g, alpha), 0.0, cfg.params, generate(cfg.force, g, alpha)};
  require_cfl(cfg, st.u);
  OrthoFrame frame = random_frame(g, cfg.frame_m, cfg.frame_seed, alpha);
  const Stepper stepper(g, cfg.params, cfg.dt);
  const long steps = std::lround(cfg.t_end / cfg.dt);
  const double tol = 1e-10 * cfg.params.beta * cfg.frame_m;

  std::string csv = "t,lyapunov_sum,bound_rhs,slack\n";
  double worst = std::numeric_limits<double>::infinity();
  auto sample = [&] {
    frame = orthonormalize(std::move(frame.w), alpha);
    const double sum = lyapunov_sum(frame, st.u, cfg.params);
    const double rhs = lyapunov_bound_rhs(st.u, cfg.params, cfg.frame_m);
    worst = std::min(worst, rhs - sum);
    csv += csv_row({st.t, sum, rhs, rhs - sum});
  };
  sample();
  for (long k = 1; k <= steps; ++k) {
    stepper.step_with_tangents(st, frame.w);
    st.t = static_cast<double>(k) * cfg.dt;
    if (k % cfg.sample_every == 0 || k == steps) sample();
  }
  out.write("lyapunov.csv", csv);
  out.add_check({"lyapunov_sum_bound", worst >= -tol, worst, "lyapunov.csv"});
  log << "lyapunov: m = " << cfg.frame_m << ", min slack " << format_double(worst) << "\n";
  return kExitOk;
}

int cmd_gap(const RunConfig& cfg, Outputs& out, std::ostream& log) {
  const GridSpec& g = cfg.grid;
  const double alpha = cfg.params.alpha;
  const VectorField ua = generate(cfg.initial, g, alpha);
  const VectorField ub = generate(cfg.initial_b, g, alpha);
  const VectorField fa = generate(cfg.force, g, alpha);
  const VectorField fb = generate(cfg.force_b, g, alpha);
  require_cfl(cfg, ua);
  require_cfl(cfg, ub);
  const GapSeries s = trajectory_gap(ua, ub, fa, fb, cfg.params, cfg.t_end, cfg.dt, cfg.sample_every);
  std::string csv = "t,gap_sq\n";
  for (std::size_t k = 0; k < s.t.size(); ++k) csv += csv_row({s.t[k], s.gap_sq[k]});
  out.write("gap.csv", csv);

  const bool same_force = cfg.force == cfg.force_b;
  const EtaReport e = eta(cfg.params, h1alpha_norm(fa, alpha));
  const double floor = 1e-24 * std::max(s.gap_sq.front(), 1e-300);
  GapCheck c = check_gap(s, e, floor);
  if (!same_force) c.pass = true;
  out.add_check({"trajectory_gap", c.pass, 1.0 - c.max_ratio, "gap.csv"});
  log << "gap: eta = " << format_double(e.eta_value) << " (" << to_string(e.regime) << "), fitted rate "
      << (c.fitted_rate ? format_double(*c.fitted_rate) : std::string("n/a")) << "\n";
  return kExitOk;
}

int cmd_decay(const RunConfig& cfg, Outputs& out, std::ostream& log) {
  const GridSpec& g = cfg.grid;
  const double alpha = cfg.params.alpha;
  const VectorField u0 = generate(cfg.initial, g, alpha);
  require_cfl(cfg, u0);
  if (cfg.decay_mode == "zero_force") {
    const ZeroForceDecay d = zero_force_decay(u0, cfg.params, cfg.t_end, cfg.dt, cfg.sample_every, cfg.p_list);
    std::string csv = "t";
    for (const auto& p : d.per_p) csv += ",L" + format_double(p.p);
    csv += "\n";
    for (std::size_t k = 0; k < d.t.size(); ++k) {
      csv += format_double(d.t[k]);
      for (const auto& p : d.per_p) csv += "," + format_double(p.norm[k]);
      csv += "\n";
    }
    out.write("decay.csv", csv);
    for (const auto& p : d.per_p) {
      out.add_check({"zero_force_decay_L" + format_double(p.p), p.envelope_ok, p.min_slack, "decay.csv"});
      log << "decay: L" << format_double(p.p) << " fitted rate "
          << (p.fitted_rate ? format_double(*p.fitted_rate) : std::string("n/a")) << ", envelope rate "
          << format_double(-p.envelope_rate) << "\n";
    }
    return kExitOk;
  }
  const VectorField force = generate(cfg.force, g, alpha);
  const StationaryResult res = solve_stationary(force, cfg.params, cfg.stationary);
  if (!res.converged) {
    log << "decay: steady state did not converge (residual " << format_double(res.residual) << ")\n";
    return kExitNoConvergence;
  }
  const SteadyConvergence sc = steady_convergence(u0, force, cfg.params, res.U, cfg.t_end, cfg.dt, cfg.sample_every);
  std::string csv = "t,r,r_inf\n";
  for (std::size_t k = 0; k < sc.t.size(); ++k) csv += csv_row({sc.t[k], sc.r[k], sc.r_inf[k]});
  out.write("steady.csv", csv);
  out.add_check({"steady_monotone", sc.monotone, sc.r.empty() ? 0.0 : sc.floor - sc.r.back(), "steady.csv"});
  out.add_check({"steady_envelope", sc.envelope_ok, sc.min_envelope_slack, "steady.csv"});
  log << "decay: steady mode, final r = " << format_double(sc.r.empty() ? 0.0 : sc.r.back()) << "\n";
  return kExitOk;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"simulate", "stationary", "bound", "lyapunov", "gap", "decay"};
  return names;
}

int run(const std::string& subcommand, const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  fs::create_directories(out_dir);
  Outputs out(out_dir, cfg);
  out.write("effective_config.ini", serialize_config(cfg));
  int code = kExitOk;
  try {
    if (subcommand == "simulate") {
      code = cmd_simulate(cfg, out, log);
    } else if (subcommand == "stationary") {
      code = cmd_stationary(cfg, out, log);
    } else if (subcommand == "bound") {
      code = cmd_bound(cfg, out, log);
    } else if (subcommand == "lyapunov") {
      code = cmd_lyapunov(cfg, out, log);
    } else if (subcommand == "gap") {
      code = cmd_gap(cfg, out, log);
    } else if (subcommand == "decay") {
      code = cmd_decay(cfg, out, log);
    } else {
      log << "unknown subcommand '" << subcommand << "'\n";
      return kExitConfig;
    }
    if (subcommand != "bound") out.write_report();
    if (code == kExitOk && !out.all_pass()) {
      log << subcommand << ": one or more checks failed, see report.json\n";
      code = kExitReportFailure;
    }
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    code = kExitConfig;
  } catch (const BlowUpError& e) {
    log << "numerical blow-up: " << e.what() << "\n";
    json dump = {{"subcommand", subcommand}, {"time", e.time()}, {"message", e.what()}};
    out.write("blowup.json", dump.dump(2) + "\n");
    code = kExitBlowUp;
  }
  out.write_metadata(subcommand, code);
  return code;
}

int run_file(const std::string& subcommand, const fs::path& config, const fs::path& out_dir, std::ostream& log) {
  RunConfig cfg;
  try {
    cfg = load_config(config);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  return run(subcommand, cfg, out_dir, log);
}

}  // namespace bardina
