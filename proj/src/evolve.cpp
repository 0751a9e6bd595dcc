#include "dirac1d/evolve.hpp"

#include <cmath>
#include <sstream>

#include "dirac1d/linpde.hpp"

namespace dirac1d {

namespace {

using C = std::complex<double>;
const C kI(0, 1);

void rk4_pointwise(C& u, C& v, const PotentialSpec& spec, double dt) {
  auto rhs = [&spec](C a, C b) {
    const auto [fu, fv] = eval_force(spec, a, b);
    return std::pair<C, C>{-kI * fu, -kI * fv};
  };
  const auto [k1u, k1v] = rhs(u, v);
  const auto [k2u, k2v] = rhs(u + 0.5 * dt * k1u, v + 0.5 * dt * k1v);
  const auto [k3u, k3v] = rhs(u + 0.5 * dt * k2u, v + 0.5 * dt * k2v);
  const auto [k4u, k4v] = rhs(u + dt * k3u, v + dt * k3v);
  u += dt / 6 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
  v += dt / 6 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
}

void nonlinear_in_place(SpinorField<double>& f, const PotentialSpec& spec, double dt) {
  if (dt == 0 || spec.is_zero()) return;
  if (spec.moduli_only()) {
    for (Eigen::Index j = 0; j < f.size(); ++j) {
      const auto [A, B] = moduli_frequencies(spec, std::norm(f.u[j]), std::norm(f.v[j]));
      f.u[j] *= std::polar(1.0, -A * dt);
      f.v[j] *= std::polar(1.0, -B * dt);
    }
  } else {
    for (Eigen::Index j = 0; j < f.size(); ++j) rk4_pointwise(f.u[j], f.v[j], spec, dt);
  }
}

bool all_finite(const SpinorField<double>& f) {
  return f.u.allFinite() && f.v.allFinite();
}

}  // namespace

SpinorField<double> nonlinear_step(const SpinorField<double>& f, const PotentialSpec& spec, double dt) {
  SpinorField<double> out = f;
  nonlinear_in_place(out, spec, dt);
  out.t = f.t + dt;
  return out;
}

FreePropagator::FreePropagator(const PeriodicGrid<double>& grid, double t) : grid_(grid), t_(t) {
  const RealVector<double> k = grid.wavenumbers();
  mats_.reserve(grid.N);
  for (Eigen::Index j = 0; j < grid.N; ++j) mats_.push_back(DiracSymbol<double>(k[j]).propagator(t));
}

void FreePropagator::apply(SpinorField<double>& f) {
  fft_.fwd(uk_, f.u);
  fft_.fwd(vk_, f.v);
  for (Eigen::Index j = 0; j < grid_.N; ++j) {
    const Eigen::Matrix2cd& m = mats_[j];
    const C a = uk_[j], b = vk_[j];
    uk_[j] = m(0, 0) * a + m(0, 1) * b;
    vk_[j] = m(1, 0) * a + m(1, 1) * b;
  }
  fft_.inv(f.u, uk_);
  fft_.inv(f.v, vk_);
  f.t += t_;
}

SpinorField<double> strang_step(const SpinorField<double>& f, const PotentialSpec& spec, double dt) {
  SpinorField<double> out = propagate_free(f, dt / 2);
  nonlinear_in_place(out, spec, dt);
  out = propagate_free(out, dt / 2);
  out.t = f.t + dt;
  return out;
}

void SimConfig::validate() const {
  std::ostringstream errs;
  if (!(dt > 0) || !std::isfinite(dt)) errs << "dt must be positive; ";
  if (!is_power_of_two(N)) errs << "N must be a power of two; ";
  if (!(L > 0) || !std::isfinite(L)) errs << "L must be positive; ";
  if (!(T_final >= 0) || !std::isfinite(T_final)) errs << "T_final must be >= 0; ";
  if (cadence < 1) errs << "cadence must be >= 1; ";
  if (is_power_of_two(N) && L > 0 && dt > 2 * L / static_cast<double>(N)) errs << "dt must not exceed h; ";
  const std::string msg = errs.str();
  if (!msg.empty()) throw Error(ErrorKind::InvalidArgument, "invalid SimConfig: " + msg);
}

Trajectory run(const SimConfig& config, const SpinorField<double>& initial, const RunObserver& observer,
               SpinorField<double>* final_state) {
  config.validate();
  Trajectory traj;
  traj.moduli_only = config.potential.moduli_only();

  SpinorField<double> f = initial;
  const double t0 = f.t;
  auto record = [&](const SpinorField<double>& g) {
    const TrajectoryRow row = diagnostic_row(g, config.potential);
    traj.append(row);
    if (observer.on_row) observer.on_row(row);
  };
  auto blow_up = [&](double t) {
    if (final_state) *final_state = f;
    std::ostringstream msg;
    msg << "blow-up suspected at t=" << t;
    throw Error(ErrorKind::BlowUp, msg.str());
  };

  record(f);
  if (config.T_final == 0) {
    if (final_state) *final_state = f;
    return traj;
  }

  long steps = std::lround(config.T_final / config.dt);
  if (std::abs(steps * config.dt - config.T_final) > 1e-9 * std::max(1.0, config.T_final))
    steps = static_cast<long>(std::ceil(config.T_final / config.dt));
  const double last_dt = config.T_final - (steps - 1) * config.dt;

  FreePropagator half(f.grid, config.dt / 2);
  std::vector<double> snaps = config.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  std::size_t next_snap = 0;
  while (next_snap < snaps.size() && snaps[next_snap] <= 0) {
    if (observer.on_snapshot) observer.on_snapshot(f);
    ++next_snap;
  }

  for (long n = 1; n <= steps; ++n) {
    const double dt = (n == steps) ? last_dt : config.dt;
    if (dt == config.dt) {
      half.apply(f);
      nonlinear_in_place(f, config.potential, dt);
      half.apply(f);
    } else {
      f = strang_step(f, config.potential, dt);
    }
    f.t = (n == steps) ? t0 + config.T_final : t0 + n * config.dt;

    if (!all_finite(f)) blow_up(f.t);
    const double elapsed = f.t - t0;
    while (next_snap < snaps.size() && snaps[next_snap] <= elapsed + 1e-12) {
      if (observer.on_snapshot) observer.on_snapshot(f);
      ++next_snap;
    }
    if (n % config.cadence == 0 || n == steps) {
      if (h1_norm(f) > config.h1_ceiling) blow_up(f.t);
      record(f);
    }
  }
  if (final_state) *final_state = f;
  return traj;
}

Trajectory run(const SimConfig& config, const RunObserver& observer, SpinorField<double>* final_state) {
  config.validate();
  const SpinorField<double> initial = make_initial_field(config.initial, PeriodicGrid<double>(config.L, config.N));
  return run(config, initial, observer, final_state);
}

}  // namespace dirac1d
