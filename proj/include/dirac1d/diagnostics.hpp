#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dirac1d/field.hpp"
#include "dirac1d/model.hpp"

namespace dirac1d {

template <typename Real>
struct ConservedTriple {
  Real H = 0;
  Real P = 0;
  Real Q = 0;
};

/// Rectangle-rule quadrature of |u|^2 + |v|^2 (spectrally accurate for periodic data).
template <typename Real>
Real charge(const SpinorField<Real>& f) {
  return f.spacing() * (f.u.squaredNorm() + f.v.squaredNorm());
}

/// P = ∫ Im(conj(u) u_x + conj(v) v_x) dx
template <typename Real>
Real momentum(const SpinorField<Real>& f) {
  const ComplexVector<Real> ux = spectral_derivative(f.grid, f.u);
  const ComplexVector<Real> vx = spectral_derivative(f.grid, f.v);
  Real sum = 0;
  for (Eigen::Index j = 0; j < f.size(); ++j)
    sum += (std::conj(f.u[j]) * ux[j] + std::conj(f.v[j]) * vx[j]).imag();
  return f.spacing() * sum;
}

/// H = ∫ [ -Im(conj(u) u_x) + Im(conj(v) v_x) + 2 Re(conj(u) v) - W(u, v) ] dx
template <typename Real>
Real hamiltonian(const SpinorField<Real>& f, const PotentialSpec& spec) {
  const ComplexVector<Real> ux = spectral_derivative(f.grid, f.u);
  const ComplexVector<Real> vx = spectral_derivative(f.grid, f.v);
  Real sum = 0;
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    const auto u = f.u[j], v = f.v[j];
    sum += -(std::conj(u) * ux[j]).imag() + (std::conj(v) * vx[j]).imag() + 2 * (std::conj(u) * v).real() -
           eval_potential(spec, u, v);
  }
  return f.spacing() * sum;
}

template <typename Real>
ConservedTriple<Real> conserved(const SpinorField<Real>& f, const PotentialSpec& spec) {
  return {hamiltonian(f, spec), momentum(f), charge(f)};
}

/// (∫ |u|^p + |v|^p dx)^{1/p}
template <typename Real>
Real lp_norm(const SpinorField<Real>& f, Real p) {
  if (!(p >= 1)) throw Error(ErrorKind::InvalidArgument, "lp_norm requires p >= 1");
  if (std::isinf(p)) return f.u.size() ? std::max(f.u.cwiseAbs().maxCoeff(), f.v.cwiseAbs().maxCoeff()) : Real(0);
  // Scaled by the sup norm so that large p does not underflow.
  const Real m = std::max(f.u.cwiseAbs().maxCoeff(), f.v.cwiseAbs().maxCoeff());
  if (m == 0) return 0;
  Real sum = 0;
  for (Eigen::Index j = 0; j < f.size(); ++j)
    sum += std::pow(std::abs(f.u[j]) / m, p) + std::pow(std::abs(f.v[j]) / m, p);
  return m * std::pow(f.spacing() * sum, 1 / p);
}

/// max over the grid of max(|u|, |v|)
template <typename Real>
Real sup_norm(const SpinorField<Real>& f) {
  return lp_norm(f, std::numeric_limits<Real>::infinity());
}

/// H^1-type norm (∫ |u|^2 + |v|^2 + |u_x|^2 + |v_x|^2)^{1/2} with spectral derivatives.
template <typename Real>
Real h1_norm(const SpinorField<Real>& f) {
  const ComplexVector<Real> ux = spectral_derivative(f.grid, f.u);
  const ComplexVector<Real> vx = spectral_derivative(f.grid, f.v);
  return std::sqrt(charge(f) + f.spacing() * (ux.squaredNorm() + vx.squaredNorm()));
}

/// Mass of |u|^2 + |v|^2 in the `width` outermost grid points at each end.
template <typename Real>
Real boundary_mass(const SpinorField<Real>& f, Eigen::Index width = 10) {
  const Eigen::Index n = std::min<Eigen::Index>(width, f.size());
  Real m = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    m += std::norm(f.u[j]) + std::norm(f.v[j]);
    m += std::norm(f.u[f.size() - 1 - j]) + std::norm(f.v[f.size() - 1 - j]);
  }
  return m * f.spacing();
}

struct LogLogFit {
  double slope = 0;
  double intercept = 0;
  double stderr_slope = 0;
  std::size_t points = 0;
};

/// Least squares of log(y) against log(t).
LogLogFit fit_loglog(std::span<const double> t, std::span<const double> y);

// -- trajectory post-processing ------------------------------------------------

struct TrajectoryRow {
  double t = 0;
  ConservedTriple<double> conserved;
  double lp2 = 0, lp4 = 0, lp6 = 0, lp8 = 0;
  double sup = 0;

  double lp(int order) const;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
  bool moduli_only = true;

  void append(const TrajectoryRow& row);
};

TrajectoryRow diagnostic_row(const SpinorField<double>& f, const PotentialSpec& spec);

struct BoundReport {
  std::string bound = "gronwall";
  int p = 1;
  double max_ratio = 0;
  std::vector<std::size_t> violations;  // row indices

  bool ok() const { return violations.empty(); }
};

/// Checks ‖u(t)‖_{L^{2p+2}} <= e^{2t} ‖u(0)‖_{L^{2p+2}} on every row; p in {1, 2, 3}.
/// max_ratio is the largest observed ‖u(t)‖ / (e^{2t} ‖u(0)‖).
BoundReport check_gronwall(const Trajectory& traj, int p, double tolerance = 1e-8);

struct DecayWindow {
  double t_lo = 10;
  double t_hi = 100;
};

/// Log-log slope of the sup norm over rows inside the window.
LogLogFit fit_nonlinear_decay(const Trajectory& traj, DecayWindow window = {});

}  // namespace dirac1d
