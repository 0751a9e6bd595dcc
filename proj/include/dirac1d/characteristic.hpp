#pragma once

#include <Eigen/Core>

#include <complex>

#include "dirac1d/field.hpp"

namespace dirac1d {

/// Complex scalar w(ξ) sampled at ξ_j = xi_min + j h, j = 0..N-1, on a
/// truncated line. Norms are cached at construction.
class ScatteringProfile {
 public:
  ScatteringProfile() = default;
  ScatteringProfile(double xi_min, double h, ComplexVector<double> w);

  /// Samples `fn` on [xi_min, xi_min + (n-1) h].
  template <typename Fn>
  static ScatteringProfile sample(double xi_min, double h, Eigen::Index n, Fn&& fn) {
    ComplexVector<double> w(n);
    for (Eigen::Index j = 0; j < n; ++j) w[j] = fn(xi_min + h * static_cast<double>(j));
    return ScatteringProfile(xi_min, h, std::move(w));
  }

  const ComplexVector<double>& w() const { return w_; }
  std::complex<double> operator[](Eigen::Index j) const { return w_[j]; }
  Eigen::Index size() const { return w_.size(); }
  double xi_min() const { return xi_min_; }
  double xi_max() const { return xi_min_ + h_ * static_cast<double>(w_.size() - 1); }
  double spacing() const { return h_; }
  double xi(Eigen::Index j) const { return xi_min_ + h_ * static_cast<double>(j); }

  double l1() const { return l1_; }
  double l2() const { return l2_; }
  double linf() const { return linf_; }
  double derivative_l1() const { return dl1_; }
  /// ∫ w dξ
  std::complex<double> mass() const { return mass_; }

  /// |w| < tol within `width` points of each end.
  bool decays_at_boundary(double tol = 1e-10, Eigen::Index width = 10) const;
  /// Throws ErrorKind::InsufficientDecay when decays_at_boundary fails.
  void require_decay(double tol = 1e-10, Eigen::Index width = 10) const;

 private:
  double xi_min_ = 0;
  double h_ = 1;
  ComplexVector<double> w_;
  double l1_ = 0, l2_ = 0, linf_ = 0, dl1_ = 0;
  std::complex<double> mass_;
};

/// Central-difference derivative (one-sided second-order at the ends).
ComplexVector<double> finite_difference_derivative(const ComplexVector<double>& f, double h);

/// ∂^{-1} w (ξ) = -∫_ξ^∞ w, as a cumulative trapezoid anchored at the right end.
ComplexVector<double> antiderivative_from_right(const ScatteringProfile& profile);

/// ∫_ξ^∞ |w|^2 by the same right-anchored cumulative trapezoid.
RealVector<double> tail_energy(const ScatteringProfile& profile);

struct LiftedSpinor {
  ComplexVector<double> u;
  ComplexVector<double> v;
  std::complex<double> mass;  // ∫ w; v fails to decay at -∞ unless this vanishes
};

/// u = w/2 · exp(-i/2 ∫_ξ^∞|w|^2), v = -(i/2) ∂^{-1}w · exp(-i/2 ∫_ξ^∞|w|^2).
/// Prints a warning when |∫ w| exceeds zero_mass_tol.
LiftedSpinor lift_to_spinor(const ScatteringProfile& profile, double zero_mass_tol = 1e-8);

/// Pointwise residual of -i v_ξ + u - 2|u|^2 v (the ξ-equation of MTM in
/// characteristic coordinates, W = 2|u|^2|v|^2) with v_ξ by central differences.
/// The two end points are set to zero.
ComplexVector<double> lift_residual(const ScatteringProfile& profile, const LiftedSpinor& lifted);

/// Pointwise residual of i u_τ + v - 2|v|^2 u with u_τ = (u1 - u0) / dtau.
ComplexVector<double> tau_equation_residual(const LiftedSpinor& before, const LiftedSpinor& after, double dtau);

/// w_τ = ∂^{-1}w - i |∂^{-1}w|^2 w
ComplexVector<double> scalar_rhs(const ScatteringProfile& profile);

/// One classical RK4 step of the scalar equation. The flow does not conserve
/// ∫ w, so w(-∞) drifts away from zero; pass require_decay = false to keep
/// stepping once that has happened.
ScatteringProfile scalar_step_rk4(const ScatteringProfile& profile, double dtau, bool require_decay = true);

/// W(X) = w(X / δ^2) / δ realised on the stretched grid X_j = δ^2 ξ_j.
/// ‖W‖_{L^2} = ‖w‖_{L^2}; eigenvalues of the Lax problem map λ -> λ / δ.
ScatteringProfile rescale(const ScatteringProfile& profile, double delta);

/// Band-limited (trigonometric) interpolation onto ξ_j = xi_min + j h, j < n.
/// The profile is treated as one period of a periodic function.
ScatteringProfile resample(const ScatteringProfile& profile, double xi_min, double h, Eigen::Index n);

/// S(w) = ‖w‖_{L^2}^2
inline double l2_squared(const ScatteringProfile& p) { return p.l2() * p.l2(); }
/// K(w) = ‖w‖_{L^1} (‖w‖_{L^∞} + ‖∂w‖_{L^1})
inline double small_norm_functional(const ScatteringProfile& p) {
  return p.l1() * (p.linf() + p.derivative_l1());
}

}  // namespace dirac1d
