#include "dirac1d/linpde.hpp"

namespace dirac1d {

DecayMeasurement measure_decay(const SpinorField<double>& initial, const std::vector<double>& times,
                               double norm_order) {
  if (times.size() < 2) throw Error(ErrorKind::InvalidArgument, "measure_decay needs at least two times");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 1) || !std::isfinite(times[i]))
      throw Error(ErrorKind::InvalidArgument, "measure_decay times must be finite and >= 1");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw Error(ErrorKind::InvalidArgument, "measure_decay times must be strictly increasing");
  }
  if (sup_norm(initial) == 0) throw Error(ErrorKind::DegenerateInput, "measure_decay: initial field is zero");
  const double reach = support_radius(initial) + times.back();
  if (!(initial.grid.L > reach))
    throw Error(ErrorKind::DomainTooSmall, "domain too small: need L > " + std::to_string(reach));

  DecayMeasurement m;
  m.norm_order = norm_order;
  for (double t : times) {
    const SpinorField<double> f = propagate_free(initial, t);
    m.t.push_back(t);
    m.sup_norm.push_back(sup_norm(f));
    m.l2_norm.push_back(lp_norm(f, 2.0));
    m.fitted_norm.push_back(std::isinf(norm_order) ? m.sup_norm.back() : lp_norm(f, norm_order));
  }
  m.fit = fit_loglog(m.t, m.fitted_norm);
  return m;
}

}  // namespace dirac1d
