#pragma once

#include <functional>
#include <unsupported/Eigen/FFT>
#include <vector>

#include "dirac1d/diagnostics.hpp"
#include "dirac1d/field.hpp"
#include "dirac1d/initial.hpp"
#include "dirac1d/model.hpp"

namespace dirac1d {

/// Pointwise flow of i u_t = dW/dū, i v_t = dW/dv̄ over dt. Moduli-only
/// potentials get the exact phase rotation; everything else one RK4 step.
SpinorField<double> nonlinear_step(const SpinorField<double>& f, const PotentialSpec& spec, double dt);

/// exp(-i t H) with the per-mode 2x2 matrices cached for a fixed t.
class FreePropagator {
 public:
  FreePropagator(const PeriodicGrid<double>& grid, double t);

  void apply(SpinorField<double>& f);
  double time() const { return t_; }

 private:
  PeriodicGrid<double> grid_;
  double t_;
  std::vector<Eigen::Matrix2cd> mats_;
  Eigen::FFT<double> fft_;
  ComplexVector<double> uk_, vk_;
};

/// Strang step: half free flow, full nonlinear step, half free flow.
SpinorField<double> strang_step(const SpinorField<double>& f, const PotentialSpec& spec, double dt);

struct SimConfig {
  PotentialSpec potential;
  InitialProfile initial = GaussianProfile{};
  double L = 40;
  long N = 1024;
  double dt = 0.01;
  double T_final = 1;
  long cadence = 10;                         // steps between diagnostic rows
  double h1_ceiling = 1e8;                   // blow-up heuristic
  std::vector<double> snapshot_times;

  /// Throws on dt <= 0, N not a power of two, T_final < 0 or dt > h.
  void validate() const;
};

struct RunObserver {
  std::function<void(const TrajectoryRow&)> on_row;
  std::function<void(const SpinorField<double>&)> on_snapshot;
};

/// Integrates `initial` to T_final. Rows are recorded at t = 0, every `cadence`
/// steps and at T_final. NaN/overflow or an H^1 norm above the ceiling raises
/// ErrorKind::BlowUp after the observer has seen every completed row.
Trajectory run(const SimConfig& config, const SpinorField<double>& initial, const RunObserver& observer = {},
               SpinorField<double>* final_state = nullptr);
Trajectory run(const SimConfig& config, const RunObserver& observer = {},
               SpinorField<double>* final_state = nullptr);

}  // namespace dirac1d
