#pragma once

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <iostream>
#include <limits>
#include <vector>

#include "dirac1d/diagnostics.hpp"
#include "dirac1d/field.hpp"

namespace dirac1d {

/// Fourier symbol M(k) = [[k, -1], [-1, -k]] of the Dirac operator
/// H = [[-i d/dx, -1], [-1, i d/dx]], eigenvalues ±ω(k), ω = sqrt(1 + k^2).
template <typename Real>
struct DiracSymbol {
  Eigen::Matrix<Real, 2, 2> matrix;
  Real omega;
  /// Column 0 belongs to +ω, column 1 to -ω.
  Eigen::Matrix<Real, 2, 2> eigenvectors;

  explicit DiracSymbol(Real k) : omega(std::sqrt(1 + k * k)) {
    matrix << k, -1, -1, -k;
    const Real np = std::sqrt(1 + (k - omega) * (k - omega));
    const Real nm = std::sqrt(1 + (k + omega) * (k + omega));
    eigenvectors << 1 / np, 1 / nm, (k - omega) / np, (k + omega) / nm;
  }

  /// exp(-i t M(k)) = cos(ωt) I - i sin(ωt) M / ω
  Eigen::Matrix<std::complex<Real>, 2, 2> propagator(Real t) const {
    const std::complex<Real> I(0, 1);
    Eigen::Matrix<std::complex<Real>, 2, 2> E =
        std::cos(omega * t) * Eigen::Matrix<std::complex<Real>, 2, 2>::Identity();
    E += (-I * std::sin(omega * t) / omega) * matrix.template cast<std::complex<Real>>();
    return E;
  }
};

/// Distance from λ to σ(H) = (-∞, -1] ∪ [1, ∞).
template <typename Real>
Real distance_to_spectrum(std::complex<Real> lambda) {
  const Real a = std::abs(lambda.real()), b = std::abs(lambda.imag());
  return a >= 1 ? b : std::hypot(1 - a, b);
}

/// κ with κ^2 + λ^2 = 1 and Re κ > 0.
template <typename Real>
std::complex<Real> resolvent_kappa(std::complex<Real> lambda, Real spectrum_tol = Real(1e-9)) {
  if (distance_to_spectrum(lambda) < spectrum_tol)
    throw Error(ErrorKind::SpectrumHit, "spectral parameter on spectrum");
  std::complex<Real> kappa = std::sqrt(Real(1) - lambda * lambda);
  if (kappa.real() < 0) kappa = -kappa;
  return kappa;
}

namespace detail {

/// Applies a k-dependent 2x2 multiplier in Fourier space.
template <typename Real, typename Multiplier>
SpinorField<Real> apply_fourier_multiplier(const SpinorField<Real>& f, Multiplier&& multiplier) {
  Eigen::FFT<Real> fft;
  ComplexVector<Real> uk, vk;
  fft.fwd(uk, f.u);
  fft.fwd(vk, f.v);
  const RealVector<Real> k = f.grid.wavenumbers();
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    const Eigen::Matrix<std::complex<Real>, 2, 2> m = multiplier(k[j]);
    const std::complex<Real> a = uk[j], b = vk[j];
    uk[j] = m(0, 0) * a + m(0, 1) * b;
    vk[j] = m(1, 0) * a + m(1, 1) * b;
  }
  SpinorField<Real> out(f.grid);
  out.t = f.t;
  fft.inv(out.u, uk);
  fft.inv(out.v, vk);
  return out;
}

}  // namespace detail

/// H f computed through the Fourier symbol (the same k grid the propagator and resolvent use).
template <typename Real>
SpinorField<Real> apply_dirac(const SpinorField<Real>& f) {
  return detail::apply_fourier_multiplier(
      f, [](Real k) { return DiracSymbol<Real>(k).matrix.template cast<std::complex<Real>>().eval(); });
}

/// exp(-i t H) f, mode by mode. The returned field's clock advances by t.
template <typename Real>
SpinorField<Real> propagate_free(const SpinorField<Real>& f, Real t) {
  if (!std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "propagation time must be finite");
  SpinorField<Real> out =
      detail::apply_fourier_multiplier(f, [t](Real k) { return DiracSymbol<Real>(k).propagator(t); });
  out.t = f.t + t;
  return out;
}

/// (H - λ)^{-1} f through the multiplier (λ^2 - 1 - k^2)^{-1} [[-(k + λ), 1], [1, k - λ]].
template <typename Real>
SpinorField<Real> resolvent_fourier(const SpinorField<Real>& f, std::complex<Real> lambda) {
  resolvent_kappa(lambda);  // spectrum rejection
  return detail::apply_fourier_multiplier(f, [lambda](Real k) {
    const std::complex<Real> d = Real(1) / (lambda * lambda - Real(1) - k * k);
    Eigen::Matrix<std::complex<Real>, 2, 2> m;
    m << -(k + lambda) * d, d, d, (k - lambda) * d;
    return m;
  });
}

/// (H - λ)^{-1} f by quadrature against the whole-line Green's function
///
///   G(s) = (1 / 2κ) [[λ + iκ sgn s, -1], [-1, λ - iκ sgn s]] e^{-κ|s|},  s = x - y.
///
/// The integrand has a kink at y = x, so the trapezoid sum is split there and
/// carries Euler-Maclaurin end corrections through h^4; the derivatives of f the
/// corrections need come from finite differences. Data is treated as zero
/// outside the box.
template <typename Real>
SpinorField<Real> resolvent_green(const SpinorField<Real>& f, std::complex<Real> lambda,
                                  Real boundary_mass_threshold = Real(1e-12)) {
  using C = std::complex<Real>;
  const C kappa = resolvent_kappa(lambda);
  if (boundary_mass(f) > boundary_mass_threshold)
    std::clog << "warning: resolvent_green: boundary mass " << boundary_mass(f)
              << " exceeds threshold; whole-line kernel truncation is not negligible\n";

  const Eigen::Index n = f.size();
  const Real h = f.spacing();
  const C I(0, 1);
  const C decay = std::exp(-kappa * h);

  // one-sided exponential sums: left(i) = Σ_{j<i} e^{-κ(i-j)h} g_j, right(i) = Σ_{j>i} e^{-κ(j-i)h} g_j
  auto sweep = [&](const ComplexVector<Real>& g, ComplexVector<Real>& left, ComplexVector<Real>& right) {
    left.resize(n);
    right.resize(n);
    C acc(0);
    for (Eigen::Index i = 0; i < n; ++i) {
      left[i] = acc = (i == 0) ? C(0) : decay * (acc + g[i - 1]);
    }
    acc = C(0);
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      right[i] = acc = (i == n - 1) ? C(0) : decay * (acc + g[i + 1]);
    }
  };

  // finite-difference derivatives, zero outside the box
  auto at = [n](const ComplexVector<Real>& g, Eigen::Index j) { return (j < 0 || j >= n) ? C(0) : g[j]; };
  struct Derivs {
    C d0, d1, d2, d3;
  };
  auto derivs = [&](const ComplexVector<Real>& g, Eigen::Index j) {
    const C m2 = at(g, j - 2), m1 = at(g, j - 1), p1 = at(g, j + 1), p2 = at(g, j + 2), z = g[j];
    return Derivs{z, (-p2 + Real(8) * p1 - Real(8) * m1 + m2) / (12 * h),
                  (-p2 + Real(16) * p1 - Real(30) * z + Real(16) * m1 - m2) / (12 * h * h),
                  (p2 - Real(2) * p1 + Real(2) * m1 - m2) / (2 * h * h * h)};
  };
  // end corrections for ∫ c_left e^{κ(y-x)} g(y) over y < x plus ∫ c_right e^{-κ(y-x)} g(y) over y > x
  const Real h2 = h * h / 12, h4 = h * h * h * h / 720;
  auto correction = [&](C c_left, C c_right, const Derivs& d) {
    const C k = kappa, k2 = k * k, k3 = k2 * k;
    const C left1 = k * d.d0 + d.d1;
    const C left3 = k3 * d.d0 + Real(3) * k2 * d.d1 + Real(3) * k * d.d2 + d.d3;
    const C right1 = -k * d.d0 + d.d1;
    const C right3 = -k3 * d.d0 + Real(3) * k2 * d.d1 - Real(3) * k * d.d2 + d.d3;
    return c_left * (-h2 * left1 + h4 * left3) + c_right * (h2 * right1 - h4 * right3);
  };

  ComplexVector<Real> lu, ru, lv, rv;
  sweep(f.u, lu, ru);
  sweep(f.v, lv, rv);

  const C inv2k = Real(1) / (Real(2) * kappa);
  const C c11_left = (lambda + I * kappa) * inv2k, c11_right = (lambda - I * kappa) * inv2k;
  const C c22_left = (lambda - I * kappa) * inv2k, c22_right = (lambda + I * kappa) * inv2k;
  const C c12 = -inv2k;

  SpinorField<Real> out(f.grid);
  out.t = f.t;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Derivs du = derivs(f.u, i), dv = derivs(f.v, i);
    const C diag_u = lambda * inv2k * f.u[i], diag_v = lambda * inv2k * f.v[i];
    const C off_u = c12 * (lu[i] + ru[i] + f.u[i]), off_v = c12 * (lv[i] + rv[i] + f.v[i]);
    out.u[i] = h * (c11_left * lu[i] + c11_right * ru[i] + diag_u + off_v) +
               correction(c11_left, c11_right, du) + correction(c12, c12, dv);
    out.v[i] = h * (c22_left * lv[i] + c22_right * rv[i] + diag_v + off_u) +
               correction(c22_left, c22_right, dv) + correction(c12, c12, du);
  }
  return out;
}

/// Relative L^2 distance ‖a - b‖ / ‖b‖ between two spinor fields on one grid.
template <typename Real>
Real relative_l2_difference(const SpinorField<Real>& a, const SpinorField<Real>& b) {
  const Real den = std::sqrt(b.u.squaredNorm() + b.v.squaredNorm());
  const Real num = std::sqrt((a.u - b.u).squaredNorm() + (a.v - b.v).squaredNorm());
  return den == 0 ? num : num / den;
}

struct DecayMeasurement {
  std::vector<double> t;
  std::vector<double> sup_norm;
  std::vector<double> l2_norm;
  std::vector<double> fitted_norm;  // L^q norm the slope was fitted to
  double norm_order = std::numeric_limits<double>::infinity();
  LogLogFit fit;
};

/// Radius outside of which max(|u|, |v|) stays below rel_threshold * sup.
template <typename Real>
Real support_radius(const SpinorField<Real>& f, Real rel_threshold = Real(1e-12)) {
  const Real cut = rel_threshold * sup_norm(f);
  Real r = 0;
  for (Eigen::Index j = 0; j < f.size(); ++j)
    if (std::max(std::abs(f.u[j]), std::abs(f.v[j])) > cut) r = std::max(r, std::abs(f.grid.x(j)));
  return r;
}

/// Samples exp(-itH) f at the given times and fits log ‖·‖_{L^q} against log t.
/// Group velocities are bounded by 1, so the box must satisfy L > L0 + max(t).
DecayMeasurement measure_decay(const SpinorField<double>& initial, const std::vector<double>& times,
                               double norm_order = std::numeric_limits<double>::infinity());

}  // namespace dirac1d
