#include "dirac1d/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "dirac1d/parallel.hpp"

namespace dirac1d {

namespace {

using C = std::complex<double>;
using Vec2 = std::array<C, 2>;
const C kI(0, 1);

int substeps(C lambda, double h) {
  return std::max(1, static_cast<int>(std::ceil(2 * std::norm(lambda) * h / kMaxStiffnessPerSubstep)));
}

/// Classical RK4 across every grid cell with m substeps; w is linear within a
/// cell. `rhs(w, y)` returns y'. `after_cell(j, y)` sees the state at node j+1.
template <typename Rhs, typename AfterCell>
void integrate_cells(const ScatteringProfile& p, C lambda, Vec2& y, Rhs&& rhs, AfterCell&& after_cell) {
  const double h = p.spacing();
  const int m = substeps(lambda, h);
  const double sub = h / m;
  auto add = [](const Vec2& a, double s, const Vec2& b) { return Vec2{a[0] + s * b[0], a[1] + s * b[1]}; };
  for (Eigen::Index j = 0; j + 1 < p.size(); ++j) {
    const C wa = p[j], dw = p[j + 1] - p[j];
    for (int k = 0; k < m; ++k) {
      const double f0 = static_cast<double>(k) / m, fm = (k + 0.5) / m, f1 = static_cast<double>(k + 1) / m;
      const C w0 = wa + f0 * dw, wm = wa + fm * dw, w1 = wa + f1 * dw;
      const Vec2 k1 = rhs(w0, y);
      const Vec2 k2 = rhs(wm, add(y, 0.5 * sub, k1));
      const Vec2 k3 = rhs(wm, add(y, 0.5 * sub, k2));
      const Vec2 k4 = rhs(w1, add(y, sub, k3));
      for (int c = 0; c < 2; ++c) y[c] += sub / 6 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    }
    after_cell(j, y);
  }
}

Vec2 lax_rhs(C lambda, C w, const Vec2& psi) {
  const C l2 = lambda * lambda;
  return {-kI * l2 * psi[0] + lambda * w * psi[1], -lambda * std::conj(w) * psi[0] + kI * l2 * psi[1]};
}

double vec_abs(const Vec2& a) { return std::sqrt(std::norm(a[0]) + std::norm(a[1])); }

void require_first_quadrant_box(const SearchBox& box, const SearchOptions& opts) {
  const bool finite = std::isfinite(box.re_lo) && std::isfinite(box.re_hi) && std::isfinite(box.im_lo) &&
                      std::isfinite(box.im_hi);
  if (!finite || !(box.re_lo < box.re_hi) || !(box.im_lo < box.im_hi))
    throw Error(ErrorKind::InvalidArgument, "search box must be a non-degenerate finite rectangle");
  if (box.re_lo < opts.axis_margin || box.im_lo < opts.axis_margin)
    throw Error(ErrorKind::InvalidArgument, "search box must stay at least axis_margin away from both axes");
}

}  // namespace

ScatteringCoefficient jost_transfer(const ScatteringProfile& profile, C lambda) {
  if (lambda == C(0)) throw Error(ErrorKind::InvalidArgument, "jost_transfer requires lambda != 0");
  profile.require_decay();
  const C l2 = lambda * lambda;
  Vec2 y{C(1), C(0)};
  double log_scale = 0;
  auto rhs = [&](C w, const Vec2& phi) -> Vec2 {
    return {lambda * w * phi[1], 2.0 * kI * l2 * phi[1] - lambda * std::conj(w) * phi[0]};
  };
  integrate_cells(profile, lambda, y, rhs, [&](Eigen::Index, Vec2& phi) {
    const double mag = std::max(std::abs(phi[0]), std::abs(phi[1]));
    if (mag > 1e100) {
      phi[0] /= mag;
      phi[1] /= mag;
      log_scale += std::log(mag);
    }
  });
  return {y[0], log_scale};
}

std::vector<Vec2> lax_solution(const ScatteringProfile& profile, C lambda, Vec2 psi0) {
  std::vector<Vec2> out;
  out.reserve(profile.size());
  out.push_back(psi0);
  Vec2 y = psi0;
  integrate_cells(profile, lambda, y, [lambda](C w, const Vec2& psi) { return lax_rhs(lambda, w, psi); },
                  [&](Eigen::Index, const Vec2& s) { out.push_back(s); });
  return out;
}

double exclusion_integral(C lambda) {
  const double im = (lambda * lambda).imag();
  if (!(im > 0)) throw Error(ErrorKind::InvalidArgument, "exclusion_integral requires Im(lambda^2) > 0");
  return std::norm(lambda) / (2 * im);
}

bool ExclusionGeometry::excludes(C lambda) const {
  if (sector_empty) return false;
  const double theta = std::arg(lambda);
  return theta > sector_lo && theta < sector_hi;
}

ExclusionGeometry exclusion_geometry(const ScatteringProfile& profile, double global_threshold) {
  ExclusionGeometry g;
  g.S = l2_squared(profile);
  g.K = small_norm_functional(profile);
  if (g.S >= 2) {
    g.sector_empty = true;
  } else {
    // sin 2θ > S/2
    const double half_angle = 0.5 * std::asin(0.5 * g.S);
    g.sector_lo = half_angle;
    g.sector_hi = 0.5 * std::numbers::pi - half_angle;
  }
  g.global_exclusion_candidate = g.K < global_threshold;
  return g;
}

WindingResult winding_number(const ScatteringProfile& profile, const SearchBox& box, const SearchOptions& opts) {
  profile.require_decay();
  const std::array<C, 4> corners{C(box.re_lo, box.im_lo), C(box.re_hi, box.im_lo), C(box.re_hi, box.im_hi),
                                 C(box.re_lo, box.im_hi)};
  const int n0 = std::max(2, opts.initial_segments);

  // initial samples along the counter-clockwise contour
  std::vector<C> pts;
  for (int e = 0; e < 4; ++e)
    for (int i = 0; i < n0; ++i)
      pts.push_back(corners[e] + (corners[(e + 1) % 4] - corners[e]) * (static_cast<double>(i) / n0));
  std::vector<ScatteringCoefficient> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { vals[i] = jost_transfer(profile, pts[i]); });

  WindingResult res;
  res.evaluations = static_cast<int>(pts.size());
  res.min_abs = std::numeric_limits<double>::infinity();
  auto check_abs = [&](const ScatteringCoefficient& a) {
    const double la = a.log_abs();
    res.min_abs = std::min(res.min_abs, std::exp(la));
    if (la < std::log(opts.min_abs_on_contour))
      throw Error(ErrorKind::ZeroNearContour, "zero near contour");
  };
  for (const auto& v : vals) check_abs(v);

  std::function<double(C, const ScatteringCoefficient&, C, const ScatteringCoefficient&, int)> segment =
      [&](C za, const ScatteringCoefficient& aa, C zb, const ScatteringCoefficient& ab, int depth) -> double {
    if (depth > 48 || res.evaluations >= opts.max_evaluations)
      throw Error(ErrorKind::WindingUnresolved, "winding unresolved: contour refinement budget exhausted");
    const C zm = 0.5 * (za + zb);
    const ScatteringCoefficient am = jost_transfer(profile, zm);
    ++res.evaluations;
    check_abs(am);
    // A segment is accepted only when its midpoint confirms the increment;
    // this guards against whole turns aliasing between the end points.
    const double d = std::arg(ab.mantissa / aa.mantissa);
    const double d1 = std::arg(am.mantissa / aa.mantissa), d2 = std::arg(ab.mantissa / am.mantissa);
    if (std::abs(d) <= opts.max_phase_step && std::abs(d1) <= opts.max_phase_step &&
        std::abs(d2) <= opts.max_phase_step && std::abs(d1 + d2 - d) < 1e-9)
      return d;
    return segment(za, aa, zm, am, depth + 1) + segment(zm, am, zb, ab, depth + 1);
  };

  double total = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::size_t j = (i + 1) % pts.size();
    total += segment(pts[i], vals[i], pts[j], vals[j], 0);
  }
  res.total_phase = total;
  const double turns = total / (2 * std::numbers::pi);
  res.winding = static_cast<int>(std::lround(turns));
  if (std::abs(turns - res.winding) > 0.05)
    throw Error(ErrorKind::WindingUnresolved, "winding unresolved: total phase is not a multiple of 2*pi");
  return res;
}

Eigenvalue newton_refine(const ScatteringProfile& profile, C guess, const SearchOptions& opts) {
  Eigenvalue e;
  C z = guess;
  for (int it = 0; it < opts.max_newton_iterations; ++it) {
    e.newton_iterations = it + 1;
    const C a = jost_transfer(profile, z).value();
    const double step = 1e-6 * (1 + std::abs(z));
    const C da = (jost_transfer(profile, z + step).value() - jost_transfer(profile, z - step).value()) / (2 * step);
    if (da == C(0)) break;
    const C dz = a / da;
    z -= dz;
    if (!((z * z).imag() > 0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) break;
    if (std::abs(dz) < opts.newton_tolerance * (1 + std::abs(z))) break;
  }
  e.lambda = z;
  e.residual = ((z * z).imag() > 0) ? std::abs(jost_transfer(profile, z).value()) : std::numeric_limits<double>::infinity();
  return e;
}

namespace {

struct Isolator {
  const ScatteringProfile& profile;
  const SearchOptions& opts;
  std::vector<Eigenvalue>& found;

  void add(const Eigenvalue& e) {
    for (const auto& f : found)
      if (std::abs(f.lambda - e.lambda) < 1e-9 * (1 + std::abs(e.lambda))) return;
    found.push_back(e);
  }

  void isolate(const SearchBox& box, int winding) {
    if (winding <= 0) return;
    const double size = std::max(box.width(), box.height());
    if (winding == 1 && size <= opts.newton_box_size) {
      Eigenvalue e = newton_refine(profile, box.center(), opts);
      if (std::isfinite(e.residual) && box.contains(e.lambda, 0.05 * size) && e.residual < 1e-6) {
        e.winding = 1;
        add(e);
        return;
      }
    }
    if (size < opts.min_box_size) {
      Eigenvalue e;
      e.lambda = box.center();
      e.residual = std::abs(jost_transfer(profile, e.lambda).value());
      e.winding = winding;
      add(e);
      return;
    }
    for (double frac : {0.5, 0.47, 0.53, 0.44, 0.56}) {
      const double xs = box.re_lo + frac * box.width(), ys = box.im_lo + frac * box.height();
      const std::array<SearchBox, 4> quads{SearchBox{box.re_lo, xs, box.im_lo, ys}, SearchBox{xs, box.re_hi, box.im_lo, ys},
                                           SearchBox{xs, box.re_hi, ys, box.im_hi}, SearchBox{box.re_lo, xs, ys, box.im_hi}};
      std::array<int, 4> w{};
      try {
        for (int q = 0; q < 4; ++q) w[q] = winding_number(profile, quads[q], opts).winding;
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::ZeroNearContour) continue;
        throw;
      }
      if (w[0] + w[1] + w[2] + w[3] != winding) continue;
      for (int q = 0; q < 4; ++q) isolate(quads[q], w[q]);
      return;
    }
    throw Error(ErrorKind::WindingUnresolved, "winding unresolved: sub-box windings do not add up");
  }
};

}  // namespace

SpectralReport find_eigenvalues(const ScatteringProfile& profile, const SearchBox& box, const SearchOptions& opts) {
  require_first_quadrant_box(box, opts);
  profile.require_decay();
  SpectralReport report;
  report.exclusion = exclusion_geometry(profile, opts.global_threshold);
  report.box = box;

  // perturb the contour outward if a zero sits on it
  SearchBox b = box;
  WindingResult top;
  for (int attempt = 0;; ++attempt) {
    try {
      top = winding_number(profile, b, opts);
      break;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::ZeroNearContour || attempt >= 3) throw;
      const double grow = 1e-3 * (attempt + 1) * std::max(b.width(), b.height());
      b.re_hi += grow;
      b.im_hi += grow;
      b.re_lo = std::max(opts.axis_margin, b.re_lo - grow);
      b.im_lo = std::max(opts.axis_margin, b.im_lo - grow);
    }
  }
  report.box = b;
  report.total_winding = top.winding;
  Isolator iso{profile, opts, report.eigenvalues};
  iso.isolate(b, top.winding);
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), [](const Eigenvalue& x, const Eigenvalue& y) {
    return x.lambda.real() < y.lambda.real() || (x.lambda.real() == y.lambda.real() && x.lambda.imag() < y.lambda.imag());
  });
  return report;
}

std::vector<C> SpectralReport::quartets() const {
  std::vector<C> out;
  for (const auto& e : eigenvalues) {
    out.push_back(e.lambda);
    out.push_back(-e.lambda);
    out.push_back(std::conj(e.lambda));
    out.push_back(-std::conj(e.lambda));
  }
  return out;
}

double truncation_sensitivity(const ScatteringProfile& profile, const std::vector<Eigenvalue>& eigenvalues,
                              const SearchOptions& opts) {
  const Eigen::Index n = profile.size(), pad = n / 2;
  ComplexVector<double> w = ComplexVector<double>::Zero(n + 2 * pad);
  w.segment(pad, n) = profile.w();
  const ScatteringProfile wide(profile.xi_min() - static_cast<double>(pad) * profile.spacing(), profile.spacing(), w);
  double shift = 0;
  for (const auto& e : eigenvalues) shift = std::max(shift, std::abs(newton_refine(wide, e.lambda, opts).lambda - e.lambda));
  return shift;
}

std::vector<HeatmapSample> sample_heatmap(const ScatteringProfile& profile, const SearchBox& box, double density) {
  if (!(density > 0)) throw Error(ErrorKind::InvalidArgument, "heatmap density must be positive");
  const int nx = std::max(2, static_cast<int>(std::ceil(box.width() * density)) + 1);
  const int ny = std::max(2, static_cast<int>(std::ceil(box.height() * density)) + 1);
  std::vector<HeatmapSample> out(static_cast<std::size_t>(nx) * ny);
  parallel_for(out.size(), [&](std::size_t idx) {
    const int iy = static_cast<int>(idx / nx), ix = static_cast<int>(idx % nx);
    const C z(box.re_lo + box.width() * ix / (nx - 1), box.im_lo + box.height() * iy / (ny - 1));
    const ScatteringCoefficient a = jost_transfer(profile, z);
    out[idx] = {z.real(), z.imag(), a.log_abs(), a.arg()};
  });
  return out;
}

double SymmetryReport::max_exact_residual() const {
  double m = 0;
  for (const auto& c : candidates) m = std::max({m, c.vector_field, c.trajectory});
  return m;
}

SymmetryReport verify_symmetries(const ScatteringProfile& profile, C lambda) {
  if (lambda.real() == 0 || lambda.imag() == 0)
    throw Error(ErrorKind::InvalidArgument, "verify_symmetries requires lambda off the axes");
  profile.require_decay();
  const double x0 = profile.xi_min();
  auto jost_solution = [&](C mu) {
    return lax_solution(profile, mu, Vec2{std::exp(-kI * mu * mu * x0), C(0)});
  };

  struct Map {
    C mu;
    std::function<Vec2(const Vec2&)> apply;
  };
  const std::array<Map, 3> maps{
      Map{-lambda, [](const Vec2& p) { return Vec2{p[0], -p[1]}; }},
      Map{-std::conj(lambda), [](const Vec2& p) { return Vec2{std::conj(p[1]), std::conj(p[0])}; }},
      Map{std::conj(lambda), [](const Vec2& p) { return Vec2{std::conj(p[1]), -std::conj(p[0])}; }},
  };

  SymmetryReport report;
  report.lambda = lambda;
  const double h = profile.spacing();
  const Eigen::Index n = profile.size();
  for (int c = 0; c < 3; ++c) {
    const auto psi = jost_solution(maps[c].mu);
    std::vector<Vec2> chi(n);
    for (Eigen::Index j = 0; j < n; ++j) chi[j] = maps[c].apply(psi[j]);

    SymmetryResidual r;
    for (Eigen::Index j = 0; j < n; ++j) {
      const Vec2 target = lax_rhs(lambda, profile[j], chi[j]);
      const Vec2 mapped = maps[c].apply(lax_rhs(maps[c].mu, profile[j], psi[j]));
      const double scale = vec_abs(target) + vec_abs(mapped) + 1e-300;
      r.vector_field = std::max(r.vector_field, vec_abs({mapped[0] - target[0], mapped[1] - target[1]}) / scale);
    }
    const auto direct = lax_solution(profile, lambda, chi[0]);
    for (Eigen::Index j = 0; j < n; ++j) {
      const Vec2 d{direct[j][0] - chi[j][0], direct[j][1] - chi[j][1]};
      r.trajectory = std::max(r.trajectory, vec_abs(d) / (vec_abs(chi[j]) + 1e-300));
    }
    for (Eigen::Index j = 1; j + 1 < n; ++j) {
      const Vec2 target = lax_rhs(lambda, profile[j], chi[j]);
      const Vec2 fd{(chi[j + 1][0] - chi[j - 1][0]) / (2 * h), (chi[j + 1][1] - chi[j - 1][1]) / (2 * h)};
      const double scale = vec_abs(target) + vec_abs(fd) + 1e-300;
      r.finite_difference = std::max(r.finite_difference, vec_abs({fd[0] - target[0], fd[1] - target[1]}) / scale);
    }
    report.candidates[c] = r;
  }
  return report;
}

}  // namespace dirac1d
