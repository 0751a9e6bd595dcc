#include "dirac1d/diagnostics.hpp"

namespace dirac1d {

LogLogFit fit_loglog(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw Error(ErrorKind::InvalidArgument, "fit_loglog: size mismatch");
  if (t.size() < 2) throw Error(ErrorKind::InvalidArgument, "fit_loglog: need at least two points");
  const std::size_t n = t.size();
  double sx = 0, sy = 0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(t[i] > 0) || !(y[i] > 0))
      throw Error(ErrorKind::DegenerateInput, "fit_loglog: abscissae and values must be positive");
    lx[i] = std::log(t[i]);
    ly[i] = std::log(y[i]);
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0) throw Error(ErrorKind::DegenerateInput, "fit_loglog: abscissae are all equal");
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = n;
  if (n > 2) {
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ly[i] - fit.intercept - fit.slope * lx[i];
      ssr += r * r;
    }
    fit.stderr_slope = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

double TrajectoryRow::lp(int order) const {
  switch (order) {
    case 2: return lp2;
    case 4: return lp4;
    case 6: return lp6;
    case 8: return lp8;
    default: throw Error(ErrorKind::InvalidArgument, "trajectory rows store L^2, L^4, L^6, L^8 only");
  }
}

void Trajectory::append(const TrajectoryRow& row) {
  if (!rows.empty() && !(row.t > rows.back().t))
    throw Error(ErrorKind::InvalidArgument, "trajectory rows must be strictly increasing in t");
  rows.push_back(row);
}

TrajectoryRow diagnostic_row(const SpinorField<double>& f, const PotentialSpec& spec) {
  TrajectoryRow r;
  r.t = f.t;
  r.conserved = conserved(f, spec);
  r.lp2 = lp_norm(f, 2.0);
  r.lp4 = lp_norm(f, 4.0);
  r.lp6 = lp_norm(f, 6.0);
  r.lp8 = lp_norm(f, 8.0);
  r.sup = sup_norm(f);
  return r;
}

BoundReport check_gronwall(const Trajectory& traj, int p, double tolerance) {
  if (p < 1 || p > 3) throw Error(ErrorKind::InvalidArgument, "check_gronwall supports p in {1, 2, 3}");
  if (!traj.moduli_only)
    throw Error(ErrorKind::InvalidArgument, "the Gronwall bound only covers moduli-only potentials");
  BoundReport report;
  report.p = p;
  if (traj.rows.empty()) return report;
  const int order = 2 * p + 2;
  const double t0 = traj.rows.front().t;
  const double n0 = traj.rows.front().lp(order);
  for (std::size_t i = 0; i < traj.rows.size(); ++i) {
    const double n = traj.rows[i].lp(order);
    if (n0 == 0) {
      if (n != 0) report.violations.push_back(i);
      continue;
    }
    const double ratio = n / (std::exp(2 * std::abs(traj.rows[i].t - t0)) * n0);
    report.max_ratio = std::max(report.max_ratio, ratio);
    if (!(ratio <= 1 + tolerance)) report.violations.push_back(i);
  }
  return report;
}

LogLogFit fit_nonlinear_decay(const Trajectory& traj, DecayWindow window) {
  if (traj.rows.empty() || window.t_lo < traj.rows.front().t || window.t_hi > traj.rows.back().t ||
      !(window.t_lo < window.t_hi) || !(window.t_lo > 0))
    throw Error(ErrorKind::WindowOutsideTrajectory, "window outside trajectory");
  std::vector<double> t, y;
  for (const auto& row : traj.rows)
    if (row.t >= window.t_lo && row.t <= window.t_hi) {
      t.push_back(row.t);
      y.push_back(row.sup);
    }
  return fit_loglog(t, y);
}

}  // namespace dirac1d
