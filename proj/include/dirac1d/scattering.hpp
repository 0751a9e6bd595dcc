#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "dirac1d/characteristic.hpp"

namespace dirac1d {

// Spectral problem in characteristic coordinates:
//
//   ψ_ξ = [[-iλ², λ w], [-λ w̄, iλ²]] ψ
//
// In the first quadrant Im(λ²) > 0 and ψ = e^{-iλ²ξ} φ with φ -> (1, 0) at the
// left end. The gauged system
//
//   φ1' = λ w φ2,   φ2' = 2iλ² φ2 - λ w̄ φ1
//
// is integrated across the profile and a(λ) := φ1 at the right end. Zeros of a
// in the first quadrant are the L^2 eigenvalues.

/// a(λ) as mantissa * exp(log_scale); log_scale is nonzero only after the
/// integrator renormalised an overflowing state.
struct ScatteringCoefficient {
  std::complex<double> mantissa{1, 0};
  double log_scale = 0;

  std::complex<double> value() const { return mantissa * std::exp(log_scale); }
  double log_abs() const { return std::log(std::abs(mantissa)) + log_scale; }
  double arg() const { return std::arg(mantissa); }
};

/// RK4 substeps per grid cell keep |2λ²| h / m below this bound.
inline constexpr double kMaxStiffnessPerSubstep = 0.5;

ScatteringCoefficient jost_transfer(const ScatteringProfile& profile, std::complex<double> lambda);

/// Ungauged solution ψ at every grid node for the given initial value at xi_min.
std::vector<std::array<std::complex<double>, 2>> lax_solution(const ScatteringProfile& profile,
                                                             std::complex<double> lambda,
                                                             std::array<std::complex<double>, 2> psi0);

/// I(λ) = |λ|² / (2 Im λ²) = 1 / (2 sin 2θ)
double exclusion_integral(std::complex<double> lambda);

struct ExclusionGeometry {
  double S = 0;  // ‖w‖²_{L²}
  double K = 0;  // ‖w‖_{L¹}(‖w‖_{L∞} + ‖∂w‖_{L¹})
  bool sector_empty = false;
  double sector_lo = 0;  // eigenvalues excluded for θ in (sector_lo, sector_hi)
  double sector_hi = 0;
  bool global_exclusion_candidate = false;  // K below the (heuristic) threshold

  /// True when arg λ lies strictly inside the excluded sector.
  bool excludes(std::complex<double> lambda) const;
};

ExclusionGeometry exclusion_geometry(const ScatteringProfile& profile, double global_threshold = 0.1);

struct SearchBox {
  double re_lo = 0.05, re_hi = 3;
  double im_lo = 0.05, im_hi = 3;

  std::complex<double> center() const { return {0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)}; }
  double width() const { return re_hi - re_lo; }
  double height() const { return im_hi - im_lo; }
  bool contains(std::complex<double> z, double slack = 0) const {
    return z.real() >= re_lo - slack && z.real() <= re_hi + slack && z.imag() >= im_lo - slack &&
           z.imag() <= im_hi + slack;
  }
  bool operator==(const SearchBox&) const = default;
};

struct SearchOptions {
  double axis_margin = 0.02;        // minimum distance of the box from both axes
  int initial_segments = 16;        // per edge
  double max_phase_step = 0.8;      // radians per contour segment before bisecting
  int max_evaluations = 200000;     // per contour
  double min_abs_on_contour = 1e-8;
  double newton_box_size = 0.25;    // try Newton once a unit-winding box is this small
  double min_box_size = 1e-7;
  int max_newton_iterations = 60;
  double newton_tolerance = 1e-13;
  double global_threshold = 0.1;
};

struct WindingResult {
  int winding = 0;
  double total_phase = 0;
  double min_abs = 0;
  int evaluations = 0;
};

/// Argument-principle count of zeros of a(λ) inside the box, with adaptive
/// bisection of contour segments until no phase increment exceeds max_phase_step.
WindingResult winding_number(const ScatteringProfile& profile, const SearchBox& box, const SearchOptions& opts = {});

struct Eigenvalue {
  std::complex<double> lambda;
  double residual = 0;  // |a(λ*)|
  int winding = 1;      // zeros counted in the isolating box
  int newton_iterations = 0;
};

struct HeatmapSample {
  double re, im, log_abs_a, arg_a;
};

struct SpectralReport {
  ExclusionGeometry exclusion;
  SearchBox box;
  int total_winding = 0;
  std::vector<Eigenvalue> eigenvalues;  // first quadrant
  std::optional<double> truncation_shift;

  /// Each eigenvalue with its mirror images (λ, -λ, λ̄, -λ̄).
  std::vector<std::complex<double>> quartets() const;
};

SpectralReport find_eigenvalues(const ScatteringProfile& profile, const SearchBox& box,
                                const SearchOptions& opts = {});

/// Refines a zero of a(λ) by Newton's method with a central-difference derivative.
Eigenvalue newton_refine(const ScatteringProfile& profile, std::complex<double> guess, const SearchOptions& opts = {});

/// Re-locates each eigenvalue on the profile padded with zeros to twice its
/// length; returns the largest shift.
double truncation_sensitivity(const ScatteringProfile& profile, const std::vector<Eigenvalue>& eigenvalues,
                              const SearchOptions& opts = {});

/// log|a| and arg a on a uniform λ grid with `density` points per unit length.
std::vector<HeatmapSample> sample_heatmap(const ScatteringProfile& profile, const SearchBox& box, double density);

struct SymmetryResidual {
  double vector_field = 0;       // transformed ODE right-hand side vs. ODE at λ
  double trajectory = 0;         // re-integration at λ from the candidate's initial value
  double finite_difference = 0;  // central differences of the candidate samples
};

struct SymmetryReport {
  std::complex<double> lambda;
  // (ψ1(-λ), -ψ2(-λ)), (ψ̄2(-λ̄), ψ̄1(-λ̄)), (ψ̄2(λ̄), -ψ̄1(λ̄))
  std::array<SymmetryResidual, 3> candidates;

  double max_exact_residual() const;
};

SymmetryReport verify_symmetries(const ScatteringProfile& profile, std::complex<double> lambda);

}  // namespace dirac1d
