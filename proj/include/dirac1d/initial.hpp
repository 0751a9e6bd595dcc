#pragma once

#include <string>
#include <variant>

#include "dirac1d/field.hpp"

namespace dirac1d {

/// u = v = A exp(-((x - c) / w)^2) exp(i k0 x)
struct GaussianProfile {
  double amplitude = 1;
  double width = 1;
  double center = 0;
  double phase_k = 0;
  bool operator==(const GaussianProfile&) const = default;
};

/// u = v = A sech(x / w)
struct SechProfile {
  double amplitude = 1;
  double width = 1;
  bool operator==(const SechProfile&) const = default;
};

struct FileProfile {
  std::string path;
  bool operator==(const FileProfile&) const = default;
};

using InitialProfile = std::variant<GaussianProfile, SechProfile, FileProfile>;

/// Complex scalar profile sampled at x (the per-component shape used above).
std::complex<double> sample_profile(const InitialProfile& profile, double x);

/// Spinor with both components set to the profile. File profiles are loaded
/// from a snapshot and must match the grid.
SpinorField<double> make_initial_field(const InitialProfile& profile, const PeriodicGrid<double>& grid);

}  // namespace dirac1d
