#include "dirac1d/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "dirac1d/evolve.hpp"
#include "dirac1d/io.hpp"
#include "dirac1d/linpde.hpp"

#ifndef DIRAC1D_VERSION
#define DIRAC1D_VERSION "v0.1.0-gunknown"
#endif

namespace dirac1d {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string version_string() { return DIRAC1D_VERSION; }

namespace {

std::ofstream open_out(const fs::path& path, bool binary = false) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) throw Error(ErrorKind::Io, "cannot write " + path.string());
  return os;
}

void write_json(const fs::path& path, const ojson& j) { open_out(path) << j.dump(2) << '\n'; }

SimConfig sim_config(const ExperimentConfig& c, const PotentialSpec& potential, double t_final) {
  SimConfig s;
  s.potential = potential;
  s.initial = *c.initial;
  s.L = c.grid->L;
  s.N = c.grid->N;
  if (c.time) {
    s.dt = c.time->dt;
    s.cadence = c.time->cadence;
    s.h1_ceiling = c.time->h1_ceiling;
    s.snapshot_times = c.time->snapshot_times;
  }
  s.T_final = t_final;
  return s;
}

const char* kTrajectoryHeader = "t,Q,P,H,lp2,lp4,lp6,sup";

void write_trajectory_row(std::ostream& os, const TrajectoryRow& r) {
  write_csv_row(os, {r.t, r.conserved.Q, r.conserved.P, r.conserved.H, r.lp2, r.lp4, r.lp6, r.sup});
  os.flush();
}

Trajectory run_with_trajectory_csv(const ExperimentConfig& c, const SimConfig& sim, SpinorField<double>* final_state,
                                   bool snapshots) {
  const fs::path out = c.output;
  std::ofstream csv = open_out(out / "trajectory.csv");
  csv << kTrajectoryHeader << '\n';
  int snap_index = 0;
  RunObserver obs;
  obs.on_row = [&](const TrajectoryRow& r) { write_trajectory_row(csv, r); };
  if (snapshots) {
    obs.on_snapshot = [&](const SpinorField<double>& f) {
      std::ostringstream name;
      name << "snapshot_" << snap_index++ << ".snapshot";
      save_field(out / name.str(), f);
    };
  }
  return run(sim, obs, final_state);
}

void run_simulate(const ExperimentConfig& c) {
  SpinorField<double> final_state(PeriodicGrid<double>(c.grid->L, c.grid->N));
  run_with_trajectory_csv(c, sim_config(c, *c.potential, *c.time->T_final), &final_state, true);
  save_field(fs::path(c.output) / "final.snapshot", final_state);
}

/// Returns false when any bound is violated.
bool run_check_bounds(const ExperimentConfig& c) {
  if (!c.potential->moduli_only())
    throw Error(ErrorKind::InvalidArgument, "the Gronwall bound is only established for moduli-only potentials");
  const Trajectory traj = run_with_trajectory_csv(c, sim_config(c, *c.potential, *c.time->T_final), nullptr, false);
  ojson arr = ojson::array();
  bool ok = true;
  for (int p = 1; p <= 3; ++p) {
    const BoundReport rep = check_gronwall(traj, p);
    ok = ok && rep.ok();
    ojson violations = ojson::array();
    for (std::size_t i : rep.violations) violations.push_back(traj.rows[i].t);
    arr.push_back({{"bound", rep.bound}, {"p", rep.p}, {"max_ratio", rep.max_ratio}, {"violations", violations}});
  }
  write_json(fs::path(c.output) / "bounds.json", arr);
  return ok;
}

void run_decay(const ExperimentConfig& c) {
  const TimeBlock time = c.time.value_or(TimeBlock{});
  const PotentialSpec potential = c.potential.value_or(PotentialSpec::linear());
  const fs::path out = c.output;
  std::ofstream csv = open_out(out / "decay.csv");
  csv << "t,sup_norm,l2_norm\n";
  LogLogFit fit;
  if (potential.is_zero()) {
    std::vector<double> times(static_cast<std::size_t>(time.samples));
    const double a = std::log(time.window_lo), b = std::log(time.window_hi);
    for (std::size_t i = 0; i < times.size(); ++i)
      times[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(times.size() - 1));
    times.back() = time.window_hi;
    const PeriodicGrid<double> grid(c.grid->L, c.grid->N);
    const DecayMeasurement m = measure_decay(make_initial_field(*c.initial, grid), times);
    for (std::size_t i = 0; i < m.t.size(); ++i) write_csv_row(csv, {m.t[i], m.sup_norm[i], m.l2_norm[i]});
    fit = m.fit;
  } else {
    const double t_final = time.T_final.value_or(time.window_hi);
    const Trajectory traj = run(sim_config(c, potential, t_final));
    for (const auto& r : traj.rows) write_csv_row(csv, {r.t, r.sup, r.lp2});
    fit = fit_nonlinear_decay(traj, {time.window_lo, time.window_hi});
  }
  ojson summary;
  summary["slope"] = fit.slope;
  summary["stderr"] = fit.stderr_slope;
  summary["intercept"] = fit.intercept;
  summary["points"] = fit.points;
  summary["window"] = {time.window_lo, time.window_hi};
  summary["norm"] = "sup";
  write_json(out / "summary.json", summary);
}

void run_scatter(const ExperimentConfig& c) {
  const ScatteringBlock& sb = *c.scattering;
  const ScatteringProfile profile = profile_from_config(c);
  SearchOptions opts;
  opts.axis_margin = sb.axis_margin;
  opts.global_threshold = sb.global_threshold;
  const SpectralReport rep = find_eigenvalues(profile, sb.box, opts);
  std::optional<double> shift;
  if (sb.truncation_check && !rep.eigenvalues.empty()) shift = truncation_sensitivity(profile, rep.eigenvalues, opts);

  ojson j;
  j["S"] = l2_squared(profile);
  j["K"] = small_norm_functional(profile);
  j["sector"] = {rep.exclusion.sector_lo, rep.exclusion.sector_hi};
  j["sector_empty"] = rep.exclusion.sector_empty;
  j["global_exclusion_candidate"] = rep.exclusion.global_exclusion_candidate;
  j["box"] = {rep.box.re_lo, rep.box.re_hi, rep.box.im_lo, rep.box.im_hi};
  j["total_winding"] = rep.total_winding;
  ojson eig = ojson::array();
  for (const auto& e : rep.eigenvalues)
    eig.push_back({{"re", e.lambda.real()}, {"im", e.lambda.imag()}, {"residual", e.residual}, {"winding", e.winding}});
  j["eigenvalues"] = eig;
  j["truncation_shift"] = shift ? ojson(*shift) : ojson(nullptr);
  j["grid"] = {{"xi_min", profile.xi_min()}, {"h", profile.spacing()}, {"N", profile.size()}};
  write_json(fs::path(c.output) / "report.json", j);

  if (sb.grid_density > 0) {
    std::ofstream csv = open_out(fs::path(c.output) / "heatmap.csv");
    csv << "lambda_re,lambda_im,log_abs_a,arg_a\n";
    for (const auto& s : sample_heatmap(profile, sb.box, sb.grid_density))
      write_csv_row(csv, {s.re, s.im, s.log_abs_a, s.arg_a});
  }
}

void run_scalar_evolve(const ExperimentConfig& c) {
  const TimeBlock& time = *c.time;
  ScatteringProfile w = profile_from_config(c);
  std::ofstream csv = open_out(fs::path(c.output) / "scalar.csv");
  csv << "tau,l2,mass_re,mass_im,sup\n";
  auto row = [&](double tau) {
    write_csv_row(csv, {tau, w.l2(), w.mass().real(), w.mass().imag(), w.linf()});
  };
  const double T = *time.T_final;
  double tau = 0;
  long step = 0;
  w.require_decay();
  bool decay_lost = false;
  row(tau);
  while (tau < T) {
    const double dtau = std::min(time.dt, T - tau);
    w = scalar_step_rk4(w, dtau, false);
    if (!decay_lost && !w.decays_at_boundary()) {
      decay_lost = true;
      std::clog << "warning: scalar-evolve: w no longer decays at the boundary from tau=" << format_double(tau + dtau)
                << " (mass " << std::abs(w.mass()) << ")\n";
    }
    ++step;
    tau = (T - tau <= time.dt) ? T : tau + dtau;
    if (!std::isfinite(w.l2())) throw Error(ErrorKind::BlowUp, "blow-up suspected at tau=" + format_double(tau));
    if (step % time.cadence == 0 || tau == T) row(tau);
  }
  Snapshot snap;
  snap.N = w.size();
  snap.L = c.grid->L;
  snap.t = tau;
  snap.channels = 1;
  snap.has_profile_grid = true;
  snap.xi_min = w.xi_min();
  snap.h = w.spacing();
  snap.data = {w.w()};
  std::ofstream os = open_out(fs::path(c.output) / "final.snapshot", true);
  write_snapshot(os, snap);
}

int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::Config || e.kind() == ErrorKind::InvalidArgument ? kExitUsage : kExitRuntime;
}

}  // namespace

ScatteringProfile profile_from_config(const ExperimentConfig& c) {
  if (!c.grid || !c.initial) throw Error(ErrorKind::InvalidArgument, "profile needs grid and initial blocks");
  const double L = c.grid->L;
  const long N = c.grid->N;
  const double h = 2 * L / static_cast<double>(N);
  if (const auto* file = std::get_if<FileProfile>(&*c.initial)) {
    std::ifstream is(file->path, std::ios::binary);
    if (!is) throw Error(ErrorKind::Io, "cannot open " + file->path);
    const Snapshot snap = read_snapshot(is);
    if (snap.has_profile_grid && snap.channels == 1) return ScatteringProfile(snap.xi_min, snap.h, snap.data[0]);
    if (snap.N != N) throw Error(ErrorKind::InvalidArgument, "snapshot grid does not match configured grid");
    return ScatteringProfile(-L, h, snap.data[0]);
  }
  return ScatteringProfile::sample(-L, h, N, [&](double xi) { return sample_profile(*c.initial, xi); });
}

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const fs::path out = config.output;
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw Error(ErrorKind::Io, "cannot create output directory " + out.string());

  ExperimentOutcome outcome;
  std::string status = "ok";
  try {
    switch (config.mode) {
      case Mode::Simulate: run_simulate(config); break;
      case Mode::CheckBounds:
        if (!run_check_bounds(config)) {
          outcome.exit_code = kExitRuntime;
          outcome.errors.push_back("Gronwall bound violated");
          status = "bound_violated";
        }
        break;
      case Mode::Decay: run_decay(config); break;
      case Mode::Scatter: run_scatter(config); break;
      case Mode::ScalarEvolve: run_scalar_evolve(config); break;
    }
  } catch (const Error& e) {
    outcome.exit_code = exit_code_for(e);
    outcome.errors.push_back(e.what());
    status = "failed";
  } catch (const std::exception& e) {
    outcome.exit_code = kExitRuntime;
    outcome.errors.push_back(e.what());
    status = "failed";
  }
  outcome.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  ojson manifest;
  manifest["version"] = version_string();
  manifest["mode"] = to_string(config.mode);
  manifest["status"] = status;
  manifest["exit_code"] = outcome.exit_code;
  manifest["errors"] = outcome.errors;
  manifest["wall_time_seconds"] = outcome.wall_seconds;
  manifest["config"] = ojson::parse(config_to_json(config));
  write_json(out / "manifest.json", manifest);
  return outcome;
}

}  // namespace dirac1d
