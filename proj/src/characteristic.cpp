#include "dirac1d/characteristic.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

namespace dirac1d {

namespace {
using C = std::complex<double>;
const C kI(0, 1);
}  // namespace

ComplexVector<double> finite_difference_derivative(const ComplexVector<double>& f, double h) {
  const Eigen::Index n = f.size();
  ComplexVector<double> d(n);
  if (n < 3) {
    d.setZero();
    return d;
  }
  for (Eigen::Index j = 1; j + 1 < n; ++j) d[j] = (f[j + 1] - f[j - 1]) / (2 * h);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2 * h);
  return d;
}

ScatteringProfile::ScatteringProfile(double xi_min, double h, ComplexVector<double> w)
    : xi_min_(xi_min), h_(h), w_(std::move(w)) {
  if (!(h > 0) || !std::isfinite(h) || !std::isfinite(xi_min))
    throw Error(ErrorKind::InvalidArgument, "profile grid must have positive finite spacing");
  if (w_.size() < 3) throw Error(ErrorKind::InvalidArgument, "profile needs at least three samples");
  if (!w_.allFinite()) throw Error(ErrorKind::InvalidArgument, "profile samples must be finite");
  l1_ = h_ * w_.cwiseAbs().sum();
  l2_ = std::sqrt(h_ * w_.squaredNorm());
  linf_ = w_.cwiseAbs().maxCoeff();
  dl1_ = h_ * finite_difference_derivative(w_, h_).cwiseAbs().sum();
  mass_ = h_ * (w_.sum() - 0.5 * (w_[0] + w_[w_.size() - 1]));
}

bool ScatteringProfile::decays_at_boundary(double tol, Eigen::Index width) const {
  const Eigen::Index n = std::min(width, w_.size());
  for (Eigen::Index j = 0; j < n; ++j)
    if (std::abs(w_[j]) >= tol || std::abs(w_[w_.size() - 1 - j]) >= tol) return false;
  return true;
}

void ScatteringProfile::require_decay(double tol, Eigen::Index width) const {
  if (!decays_at_boundary(tol, width))
    throw Error(ErrorKind::InsufficientDecay, "insufficient decay: profile does not vanish near the boundary");
}

ComplexVector<double> antiderivative_from_right(const ScatteringProfile& profile) {
  profile.require_decay();
  const Eigen::Index n = profile.size();
  const double h = profile.spacing();
  ComplexVector<double> d(n);
  d[n - 1] = 0;
  for (Eigen::Index j = n - 2; j >= 0; --j) d[j] = d[j + 1] - 0.5 * h * (profile[j] + profile[j + 1]);
  return d;
}

RealVector<double> tail_energy(const ScatteringProfile& profile) {
  const Eigen::Index n = profile.size();
  const double h = profile.spacing();
  RealVector<double> e(n);
  e[n - 1] = 0;
  for (Eigen::Index j = n - 2; j >= 0; --j)
    e[j] = e[j + 1] + 0.5 * h * (std::norm(profile[j]) + std::norm(profile[j + 1]));
  return e;
}

LiftedSpinor lift_to_spinor(const ScatteringProfile& profile, double zero_mass_tol) {
  const ComplexVector<double> d = antiderivative_from_right(profile);
  const RealVector<double> tail = tail_energy(profile);
  LiftedSpinor out;
  out.mass = -d[0];
  if (std::abs(out.mass) > zero_mass_tol)
    std::clog << "warning: lift_to_spinor: zero-mass constraint violated by " << std::abs(out.mass)
              << "; v does not decay at the left end\n";
  const Eigen::Index n = profile.size();
  out.u.resize(n);
  out.v.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const C phase = std::polar(1.0, -0.5 * tail[j]);
    out.u[j] = 0.5 * profile[j] * phase;
    out.v[j] = -0.5 * kI * d[j] * phase;
  }
  return out;
}

ComplexVector<double> lift_residual(const ScatteringProfile& profile, const LiftedSpinor& lifted) {
  const Eigen::Index n = profile.size();
  const double h = profile.spacing();
  ComplexVector<double> r = ComplexVector<double>::Zero(n);
  for (Eigen::Index j = 1; j + 1 < n; ++j) {
    const C vx = (lifted.v[j + 1] - lifted.v[j - 1]) / (2 * h);
    const C u = lifted.u[j], v = lifted.v[j];
    r[j] = -kI * vx + u - 2.0 * std::norm(u) * v;
  }
  return r;
}

ComplexVector<double> tau_equation_residual(const LiftedSpinor& before, const LiftedSpinor& after, double dtau) {
  const Eigen::Index n = before.u.size();
  ComplexVector<double> r(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const C ut = (after.u[j] - before.u[j]) / dtau;
    const C u = before.u[j], v = before.v[j];
    r[j] = kI * ut + v - 2.0 * std::norm(v) * u;
  }
  return r;
}

ComplexVector<double> scalar_rhs(const ScatteringProfile& profile) {
  const ComplexVector<double> d = antiderivative_from_right(profile);
  ComplexVector<double> out(profile.size());
  for (Eigen::Index j = 0; j < profile.size(); ++j) out[j] = d[j] - kI * std::norm(d[j]) * profile[j];
  return out;
}

ScatteringProfile scalar_step_rk4(const ScatteringProfile& profile, double dtau, bool require_decay) {
  // Stages skip the decay check: RK4 intermediates are only O(dtau) away from
  // a decaying profile, and the accepted result is checked by the next call.
  auto rhs = [&](const ComplexVector<double>& w) {
    const Eigen::Index n = w.size();
    const double h = profile.spacing();
    ComplexVector<double> d(n), out(n);
    d[n - 1] = 0;
    for (Eigen::Index j = n - 2; j >= 0; --j) d[j] = d[j + 1] - 0.5 * h * (w[j] + w[j + 1]);
    for (Eigen::Index j = 0; j < n; ++j) out[j] = d[j] - kI * std::norm(d[j]) * w[j];
    return out;
  };
  if (require_decay) profile.require_decay();
  const ComplexVector<double>& w = profile.w();
  const ComplexVector<double> k1 = rhs(w);
  const ComplexVector<double> k2 = rhs(w + 0.5 * dtau * k1);
  const ComplexVector<double> k3 = rhs(w + 0.5 * dtau * k2);
  const ComplexVector<double> k4 = rhs(w + dtau * k3);
  return ScatteringProfile(profile.xi_min(), profile.spacing(), w + dtau / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

ScatteringProfile rescale(const ScatteringProfile& profile, double delta) {
  if (!(delta > 0) || !std::isfinite(delta)) throw Error(ErrorKind::InvalidArgument, "rescale requires delta > 0");
  const double s = delta * delta;
  return ScatteringProfile(s * profile.xi_min(), s * profile.spacing(), profile.w() / delta);
}

ScatteringProfile resample(const ScatteringProfile& profile, double xi_min, double h, Eigen::Index n) {
  const Eigen::Index m = profile.size();
  const double period = profile.spacing() * static_cast<double>(m);
  // c_k = (1/m) Σ_j w_j e^{-2πi k j / m}, symmetric index range, Nyquist split evenly
  ComplexVector<double> coeff = ComplexVector<double>::Zero(m);
  std::vector<long> freq(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    freq[k] = (k <= m / 2) ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(m);
    C acc(0);
    for (Eigen::Index j = 0; j < m; ++j)
      acc += profile[j] * std::polar(1.0, -2 * std::numbers::pi * static_cast<double>(freq[k] * j) / m);
    coeff[k] = acc / static_cast<double>(m);
  }
  ComplexVector<double> out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = (xi_min + h * static_cast<double>(i) - profile.xi_min()) / period;
    C acc(0);
    for (Eigen::Index k = 0; k < m; ++k) {
      const bool nyquist = (m % 2 == 0) && freq[k] == m / 2;
      acc += nyquist ? coeff[k] * std::cos(2 * std::numbers::pi * freq[k] * s)
                     : coeff[k] * std::polar(1.0, 2 * std::numbers::pi * freq[k] * s);
    }
    out[i] = acc;
  }
  return ScatteringProfile(xi_min, h, std::move(out));
}

}  // namespace dirac1d
