#pragma once

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>

#include "dirac1d/error.hpp"

namespace dirac1d {

template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

inline bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

/// Uniform periodic grid on [-L, L) with N points.
template <typename Real>
struct PeriodicGrid {
  Real L = 1;
  Eigen::Index N = 1;

  PeriodicGrid() = default;
  PeriodicGrid(Real half_width, Eigen::Index n) : L(half_width), N(n) {
    if (!(half_width > 0) || !std::isfinite(half_width))
      throw Error(ErrorKind::InvalidArgument, "grid half-width must be positive and finite");
    if (!is_power_of_two(n)) throw Error(ErrorKind::InvalidArgument, "grid size N must be a power of two");
  }

  Real spacing() const { return 2 * L / static_cast<Real>(N); }
  Real x(Eigen::Index j) const { return -L + spacing() * static_cast<Real>(j); }

  RealVector<Real> points() const {
    RealVector<Real> xs(N);
    for (Eigen::Index j = 0; j < N; ++j) xs[j] = x(j);
    return xs;
  }

  /// Angular wavenumbers in FFT order. The Nyquist mode is assigned -N/2.
  RealVector<Real> wavenumbers() const {
    RealVector<Real> k(N);
    const Real dk = std::numbers::pi_v<Real> / L;
    for (Eigen::Index j = 0; j < N; ++j) k[j] = dk * static_cast<Real>(j < N / 2 ? j : j - N);
    return k;
  }

  bool operator==(const PeriodicGrid&) const = default;
};

template <typename Real>
struct SpinorField {
  PeriodicGrid<Real> grid;
  ComplexVector<Real> u;
  ComplexVector<Real> v;
  Real t = 0;

  SpinorField() = default;
  explicit SpinorField(const PeriodicGrid<Real>& g)
      : grid(g), u(ComplexVector<Real>::Zero(g.N)), v(ComplexVector<Real>::Zero(g.N)) {}
  SpinorField(const PeriodicGrid<Real>& g, ComplexVector<Real> uu, ComplexVector<Real> vv, Real time = 0)
      : grid(g), u(std::move(uu)), v(std::move(vv)), t(time) {
    if (u.size() != g.N || v.size() != g.N)
      throw Error(ErrorKind::InvalidArgument, "spinor components must have exactly N samples");
  }

  Eigen::Index size() const { return grid.N; }
  Real spacing() const { return grid.spacing(); }
};

/// Spectral first derivative on the periodic grid; the Nyquist mode is zeroed.
template <typename Real>
ComplexVector<Real> spectral_derivative(const PeriodicGrid<Real>& grid, const ComplexVector<Real>& f) {
  Eigen::FFT<Real> fft;
  ComplexVector<Real> fk;
  fft.fwd(fk, f);
  const RealVector<Real> k = grid.wavenumbers();
  const std::complex<Real> I(0, 1);
  for (Eigen::Index j = 0; j < grid.N; ++j) fk[j] *= (j == grid.N / 2) ? std::complex<Real>(0) : I * k[j];
  ComplexVector<Real> out;
  fft.inv(out, fk);
  return out;
}

/// Multiplies every sample of both components by a common phase.
template <typename Real>
SpinorField<Real> gauge_rotate(SpinorField<Real> f, Real theta) {
  const std::complex<Real> phase = std::polar(Real(1), theta);
  f.u *= phase;
  f.v *= phase;
  return f;
}

}  // namespace dirac1d
