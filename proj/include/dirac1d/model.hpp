#pragma once

#include <Eigen/Core>

#include <complex>
#include <string>
#include <utility>

#include "dirac1d/field.hpp"

namespace dirac1d {

/// Coefficients of the gauge-invariant, u<->v symmetric polynomial
///
///   W = a1 (|u|^4 + |v|^4) + a2 |u|^2 |v|^2 + a3 (conj(u) v + u conj(v))^2
///     + a4 (|u|^2 + |v|^2)(conj(u) v + u conj(v)) + b (|u|^2 + |v|^2) |u|^2 |v|^2
///
/// moduli_only is stored and must agree with (a3 == 0 && a4 == 0); the
/// integrator picks the exact phase-rotation substep when it is set.
class PotentialSpec {
 public:
  PotentialSpec() = default;
  PotentialSpec(double alpha1, double alpha2, double alpha3, double alpha4, double beta_sextic = 0.0);
  PotentialSpec(double alpha1, double alpha2, double alpha3, double alpha4, double beta_sextic, bool moduli_only);

  static PotentialSpec linear() { return {}; }
  static PotentialSpec mtm() { return {0, 4, 0, 0}; }
  static PotentialSpec gross_neveu() { return {0, 0, 2, 0}; }
  static PotentialSpec coupled_mode(double alpha) { return {alpha, 4 * alpha, 0, 0}; }
  static PotentialSpec photonic(double alpha, double beta) { return {0, -2 * beta, beta, alpha}; }
  static PotentialSpec feshbach(double alpha) { return {0, 0, 0, 0, alpha}; }

  /// Parses "mtm", "gross_neveu", "linear", "coupled_mode(a)", "photonic(a,b)", "feshbach(a)".
  static PotentialSpec from_preset(const std::string& expr);

  double alpha1() const { return a_[0]; }
  double alpha2() const { return a_[1]; }
  double alpha3() const { return a_[2]; }
  double alpha4() const { return a_[3]; }
  double beta_sextic() const { return beta_; }
  bool moduli_only() const { return moduli_only_; }
  bool is_zero() const { return a_[0] == 0 && a_[1] == 0 && a_[2] == 0 && a_[3] == 0 && beta_ == 0; }

  bool operator==(const PotentialSpec&) const = default;

 private:
  double a_[4] = {0, 0, 0, 0};
  double beta_ = 0;
  bool moduli_only_ = true;
};

template <typename Real>
Real eval_potential(const PotentialSpec& spec, std::complex<Real> u, std::complex<Real> v) {
  const Real a = std::norm(u), b = std::norm(v);
  const Real s = 2 * (std::conj(u) * v).real();
  return Real(spec.alpha1()) * (a * a + b * b) + Real(spec.alpha2()) * a * b + Real(spec.alpha3()) * s * s +
         Real(spec.alpha4()) * (a + b) * s + Real(spec.beta_sextic()) * (a + b) * a * b;
}

/// Wirtinger derivatives (dW/d conj(u), dW/d conj(v)) with d/dz̄ = (d/dx + i d/dy) / 2.
template <typename Real>
std::pair<std::complex<Real>, std::complex<Real>> eval_force(const PotentialSpec& spec, std::complex<Real> u,
                                                             std::complex<Real> v) {
  const Real a = std::norm(u), b = std::norm(v);
  const Real s = 2 * (std::conj(u) * v).real();
  const Real a1 = spec.alpha1(), a2 = spec.alpha2(), a3 = spec.alpha3(), a4 = spec.alpha4();
  const Real beta = spec.beta_sextic();

  std::complex<Real> fu = (2 * a1 * a + a2 * b + beta * b * (2 * a + b)) * u;
  std::complex<Real> fv = (2 * a1 * b + a2 * a + beta * a * (a + 2 * b)) * v;
  fu += 2 * a3 * s * v + a4 * (s * u + (a + b) * v);
  fv += 2 * a3 * s * u + a4 * (s * v + (a + b) * u);
  return {fu, fv};
}

/// Phase frequencies (dW/d|u|^2, dW/d|v|^2) for a moduli-only potential.
template <typename Real>
std::pair<Real, Real> moduli_frequencies(const PotentialSpec& spec, Real a, Real b) {
  const Real a1 = spec.alpha1(), a2 = spec.alpha2(), beta = spec.beta_sextic();
  return {2 * a1 * a + a2 * b + beta * b * (2 * a + b), 2 * a1 * b + a2 * a + beta * a * (a + 2 * b)};
}

/// Pointwise W(u(x), v(x)) over a field.
template <typename Real>
RealVector<Real> potential_density(const PotentialSpec& spec, const SpinorField<Real>& f) {
  RealVector<Real> w(f.size());
  for (Eigen::Index j = 0; j < f.size(); ++j) w[j] = eval_potential(spec, f.u[j], f.v[j]);
  return w;
}

/// psi = T u with T = [[1, -1], [-i, -i]].
template <typename Real>
struct FrameTransform {
  using Matrix = Eigen::Matrix<std::complex<Real>, 2, 2>;

  static Matrix forward() {
    const std::complex<Real> I(0, 1);
    Matrix T;
    T << 1, -1, -I, -I;
    return T;
  }
  static Matrix inverse() {
    const std::complex<Real> I(0, 1);
    Matrix Ti;
    Ti << Real(0.5), Real(0.5) * I, Real(-0.5), Real(0.5) * I;
    return Ti;
  }
};

namespace detail {
template <typename Real>
SpinorField<Real> apply_2x2(const typename FrameTransform<Real>::Matrix& M, const SpinorField<Real>& f) {
  SpinorField<Real> out(f.grid);
  out.t = f.t;
  out.u = M(0, 0) * f.u + M(0, 1) * f.v;
  out.v = M(1, 0) * f.u + M(1, 1) * f.v;
  return out;
}
}  // namespace detail

template <typename Real>
SpinorField<Real> to_psi_frame(const SpinorField<Real>& f) {
  return detail::apply_2x2(FrameTransform<Real>::forward(), f);
}

template <typename Real>
SpinorField<Real> from_psi_frame(const SpinorField<Real>& f) {
  return detail::apply_2x2(FrameTransform<Real>::inverse(), f);
}

}  // namespace dirac1d
