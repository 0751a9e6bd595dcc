#include "dirac1d/initial.hpp"

#include <cmath>

#include "dirac1d/io.hpp"

namespace dirac1d {

std::complex<double> sample_profile(const InitialProfile& profile, double x) {
  if (const auto* g = std::get_if<GaussianProfile>(&profile)) {
    const double s = (x - g->center) / g->width;
    return g->amplitude * std::exp(-s * s) * std::polar(1.0, g->phase_k * x);
  }
  if (const auto* s = std::get_if<SechProfile>(&profile)) return s->amplitude / std::cosh(x / s->width);
  throw Error(ErrorKind::InvalidArgument, "file profiles have no analytic samples");
}

SpinorField<double> make_initial_field(const InitialProfile& profile, const PeriodicGrid<double>& grid) {
  if (const auto* file = std::get_if<FileProfile>(&profile)) {
    SpinorField<double> f = load_field(file->path);
    if (!(f.grid == grid)) throw Error(ErrorKind::InvalidArgument, "snapshot grid does not match configured grid");
    return f;
  }
  SpinorField<double> f(grid);
  for (Eigen::Index j = 0; j < grid.N; ++j) f.u[j] = f.v[j] = sample_profile(profile, grid.x(j));
  return f;
}

}  // namespace dirac1d
