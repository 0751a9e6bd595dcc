#include "doctest.h"

#include <cmath>

#include "dirac1d/characteristic.hpp"

using namespace dirac1d;
using C = std::complex<double>;

namespace {

ScatteringProfile gaussian(double A, double a, Eigen::Index n) {
  const double h = 2 * a / static_cast<double>(n - 1);
  return ScatteringProfile::sample(-a, h, n, [A](double x) { return C(A * std::exp(-x * x)); });
}

// c g''(ξ) with g = exp(-ξ²/2): zero mass and zero first moment
ScatteringProfile zero_mass_bump(Eigen::Index n, double a = 12) {
  const double h = 2 * a / static_cast<double>(n - 1);
  return ScatteringProfile::sample(-a, h, n, [](double x) { return C(0.8, 0.6) * (x * x - 1) * std::exp(-x * x / 2); });
}

double max_abs(const ComplexVector<double>& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("profile construction and norms") {
  const auto p = gaussian(1, 10, 2001);
  CHECK(p.xi_max() == doctest::Approx(10));
  CHECK(p.l2() * p.l2() == doctest::Approx(std::sqrt(M_PI / 2)).epsilon(1e-12));
  CHECK(p.l1() == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(p.linf() == doctest::Approx(1));
  // ∫|g'| = 2 g(0)
  CHECK(p.derivative_l1() == doctest::Approx(2).epsilon(1e-4));
  CHECK(std::abs(p.mass() - std::sqrt(M_PI)) < 1e-12);
  CHECK(p.decays_at_boundary());
  CHECK_FALSE(gaussian(1, 3, 101).decays_at_boundary());
  try {
    gaussian(1, 3, 101).require_decay();
    FAIL("expected InsufficientDecay");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientDecay);
  }
  CHECK_THROWS_AS(ScatteringProfile(0, 0, ComplexVector<double>::Zero(10)), Error);
  CHECK_THROWS_AS(ScatteringProfile(0, 1, ComplexVector<double>::Zero(2)), Error);
  ComplexVector<double> bad = ComplexVector<double>::Zero(5);
  bad[2] = std::nan("");
  CHECK_THROWS_AS(ScatteringProfile(0, 1, bad), Error);
}

TEST_CASE("antiderivative and tail energy against closed forms") {
  // w = g' with g = exp(-ξ²): ∂^{-1} w = g - g(ξ_max)
  const Eigen::Index n = 4001;
  const double a = 10, h = 2 * a / (n - 1);
  const auto p = ScatteringProfile::sample(-a, h, n, [](double x) { return C(-2 * x * std::exp(-x * x)); });
  const auto d = antiderivative_from_right(p);
  double err = 0;
  for (Eigen::Index j = 0; j < n; ++j) err = std::max(err, std::abs(d[j] - (std::exp(-p.xi(j) * p.xi(j)) - std::exp(-a * a))));
  CHECK(err < 2e-5);
  CHECK(d[n - 1] == C(0));

  const auto g = gaussian(1, a, n);
  const auto tail = tail_energy(g);
  for (Eigen::Index j : {Eigen::Index(0), n / 3, n / 2, n - 1})
    CHECK(std::abs(tail[j] - std::sqrt(M_PI / 8) * std::erfc(std::sqrt(2.0) * g.xi(j))) < 1e-5);
}

TEST_CASE("zero data") {
  const auto z = ScatteringProfile(-5, 0.1, ComplexVector<double>::Zero(101));
  CHECK(max_abs(antiderivative_from_right(z)) == 0);
  CHECK(max_abs(scalar_rhs(z)) == 0);
  CHECK(max_abs(scalar_step_rk4(z, 0.1).w()) == 0);
  const auto lifted = lift_to_spinor(z);
  CHECK(max_abs(lifted.u) == 0);
  CHECK(max_abs(lifted.v) == 0);
  CHECK(lifted.mass == C(0));
  CHECK(l2_squared(z) == 0);
  CHECK(small_norm_functional(z) == 0);
}

TEST_CASE("lifted spinor solves the xi-equation to second order") {
  std::vector<double> res;
  for (Eigen::Index n : {513, 1025, 2049}) {
    const auto p = zero_mass_bump(n);
    const auto lifted = lift_to_spinor(p);
    CHECK(std::abs(lifted.mass) < 1e-10);
    res.push_back(max_abs(lift_residual(p, lifted)));
  }
  INFO("residuals " << res[0] << " " << res[1] << " " << res[2]);
  CHECK(res[0] / res[1] == doctest::Approx(4).epsilon(0.1));
  CHECK(res[1] / res[2] == doctest::Approx(4).epsilon(0.1));
  CHECK(res[2] < 1e-4);
}

TEST_CASE("scalar flow: L2 drift equals minus the squared mass") {
  // d/dτ ‖w‖² = -|∫w|²; zero-mass data keeps ‖w‖² stationary to first order
  const auto p = gaussian(0.3, 10, 2001);
  const double dtau = 1e-4;
  const auto q = scalar_step_rk4(p, dtau);
  const double rate = (l2_squared(q) - l2_squared(p)) / dtau;
  CHECK(rate == doctest::Approx(-std::norm(p.mass())).epsilon(1e-3));

  // after one step w(-∞) = -dτ ∫w no longer vanishes
  CHECK_FALSE(q.decays_at_boundary());
  CHECK_THROWS_AS(scalar_step_rk4(q, dtau), Error);
  CHECK_NOTHROW(scalar_step_rk4(q, dtau, false));

  const auto b = zero_mass_bump(1025);
  const auto b1 = scalar_step_rk4(b, dtau);
  CHECK(std::abs(l2_squared(b1) - l2_squared(b)) / dtau < 1e-6);
}

TEST_CASE("tau-equation residual shrinks with dtau") {
  const auto p = zero_mass_bump(2049);
  const auto l0 = lift_to_spinor(p);
  std::vector<double> r;
  for (double dtau : {4e-4, 2e-4}) r.push_back(max_abs(tau_equation_residual(l0, lift_to_spinor(scalar_step_rk4(p, dtau)), dtau)));
  INFO("residuals " << r[0] << " " << r[1]);
  CHECK(r[1] < r[0]);
  CHECK(r[1] < 0.01);
}

TEST_CASE("rescaling keeps S and K") {
  const auto p = ScatteringProfile::sample(-8, 0.01, 1601, [](double x) { return C(1.2, -0.4) / std::cosh(x) * std::polar(1.0, 0.3 * x); });
  for (double delta : {0.5, 1.0, 2.0, 3.7}) {
    const auto q = rescale(p, delta);
    CHECK(q.xi_min() == doctest::Approx(-8 * delta * delta));
    CHECK(l2_squared(q) == doctest::Approx(l2_squared(p)).epsilon(1e-13));
    CHECK(small_norm_functional(q) == doctest::Approx(small_norm_functional(p)).epsilon(1e-13));
  }
  const auto id = rescale(p, 1);
  CHECK(id.w() == p.w());
  CHECK(id.spacing() == p.spacing());
  CHECK_THROWS_AS(rescale(p, 0), Error);
  CHECK_THROWS_AS(rescale(p, -1), Error);
}

TEST_CASE("band-limited resampling") {
  const auto coarse = gaussian(1, 12, 256);
  const auto fine = resample(coarse, -6, 0.01, 1201);
  double err = 0;
  for (Eigen::Index j = 0; j < fine.size(); ++j) err = std::max(err, std::abs(fine[j] - std::exp(-fine.xi(j) * fine.xi(j))));
  CHECK(err < 1e-10);
  // resampling onto the original nodes reproduces the data
  const auto same = resample(coarse, coarse.xi_min(), coarse.spacing(), coarse.size());
  CHECK(max_abs(same.w() - coarse.w()) < 1e-12);
}
