#include "doctest.h"

#include "dirac1d/linpde.hpp"
#include "test_support.hpp"

using namespace dirac1d;
using C = std::complex<double>;
using test_support::gaussian_pair;
using test_support::random_field;

TEST_CASE("symbol eigenpairs") {
  for (double k : {-3.0, -0.4, 0.0, 1.7}) {
    const DiracSymbol<double> s(k);
    CHECK(s.omega == doctest::Approx(std::sqrt(1 + k * k)));
    const Eigen::Vector2d ep = s.eigenvectors.col(0), em = s.eigenvectors.col(1);
    CHECK((s.matrix * ep - s.omega * ep).norm() < 1e-14);
    CHECK((s.matrix * em + s.omega * em).norm() < 1e-14);
    CHECK(std::abs(ep.dot(em)) < 1e-14);
    // the closed-form propagator against a generic matrix exponential oracle (Taylor series)
    const double t = 0.8;
    Eigen::Matrix2cd term = Eigen::Matrix2cd::Identity(), sum = term;
    for (int n = 1; n < 60; ++n) {
      term = term * (C(0, -t) * s.matrix.cast<C>()) / double(n);
      sum += term;
    }
    CHECK((s.propagator(t) - sum).norm() < 1e-13);
  }
}

TEST_CASE("free propagation: identity, unitarity, group law") {
  const PeriodicGrid<double> g(20, 256);
  const auto f = random_field(g, 5);
  const auto f0 = propagate_free(f, 0.0);
  CHECK(relative_l2_difference(f0, f) < 1e-14);

  const auto a = propagate_free(f, 1.3);
  CHECK(a.t == doctest::Approx(1.3));
  CHECK(charge(a) == doctest::Approx(charge(f)).epsilon(1e-13));

  const auto b = propagate_free(propagate_free(f, 0.6), 0.7);
  CHECK(relative_l2_difference(b, a) < 1e-13);
  const auto back = propagate_free(a, -1.3);
  CHECK(relative_l2_difference(back, f) < 1e-13);
  CHECK_THROWS_AS(propagate_free(f, std::nan("")), Error);
}

TEST_CASE("a single Fourier eigenmode picks up exp(-i omega t)") {
  const PeriodicGrid<double> g(10, 64);
  const int m = 3;
  const double k = m * M_PI / g.L;
  const DiracSymbol<double> s(k);
  SpinorField<double> f(g);
  for (Eigen::Index j = 0; j < g.N; ++j) {
    const C e = std::polar(1.0, k * g.x(j));
    f.u[j] = s.eigenvectors(0, 0) * e;
    f.v[j] = s.eigenvectors(1, 0) * e;
  }
  const double t = 2.1;
  const auto out = propagate_free(f, t);
  const C ph = std::polar(1.0, -s.omega * t);
  CHECK((out.u - ph * f.u).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((out.v - ph * f.v).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("kappa branch and spectrum rejection") {
  for (C lambda : {C(0, 0.5), C(0.3, 0.7), C(-2, 0.1), C(0, -4), C(0.5, 0)}) {
    const C kappa = resolvent_kappa(lambda);
    CHECK(kappa.real() > 0);
    CHECK(std::abs(kappa * kappa + lambda * lambda - 1.0) < 1e-14);
  }
  CHECK(distance_to_spectrum(C(1.5, 0)) == 0);
  CHECK(distance_to_spectrum(C(0, 2)) == doctest::Approx(std::sqrt(5.0)));
  CHECK_THROWS_AS(resolvent_kappa(C(1.5, 0)), Error);
  CHECK_THROWS_AS(resolvent_kappa(C(-1, 0)), Error);
  const PeriodicGrid<double> g(10, 64);
  CHECK_THROWS_AS(resolvent_fourier(random_field(g, 1), C(2, 0)), Error);
  try {
    resolvent_kappa(C(1, 0));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SpectrumHit);
  }
}

TEST_CASE("resolvent identity (H - lambda) R f = f") {
  const PeriodicGrid<double> g(20, 512);
  const auto f = gaussian_pair(g, 1, -0.5, 1.5, 0.8, 1);
  for (C lambda : {C(0, 0.5), C(0.3, 0.7), C(-0.9, 0.05), C(3, -1)}) {
    const auto r = resolvent_fourier(f, lambda);
    auto hr = apply_dirac(r);
    hr.u -= lambda * r.u;
    hr.v -= lambda * r.v;
    CHECK(relative_l2_difference(hr, f) < 1e-10);
  }
}

TEST_CASE("Green kernel quadrature matches the Fourier multiplier") {
  const PeriodicGrid<double> g(25, 1024);
  const auto f = gaussian_pair(g, 1, 0.5, 1, 0.4);
  for (C lambda : {C(0, 0.5), C(0.3, 0.7), C(0, 2)}) {
    const double d = relative_l2_difference(resolvent_green(f, lambda), resolvent_fourier(f, lambda));
    INFO("lambda " << lambda << " diff " << d);
    CHECK(d < 1e-6);
  }
}

TEST_CASE("resolvent decays like 1/|lambda| along the imaginary axis") {
  const PeriodicGrid<double> g(20, 512);
  const auto f = gaussian_pair(g, 1, 1);
  const double n0 = std::sqrt(charge(f));
  for (double y : {50.0, 200.0, 800.0}) {
    const double nr = std::sqrt(charge(resolvent_fourier(f, C(0, y))));
    CHECK(nr * y / n0 == doctest::Approx(1).epsilon(2.0 / y));
  }
}

TEST_CASE("measure_decay") {
  const PeriodicGrid<double> g(200, 4096);
  auto f = gaussian_pair(g, 1, 0);
  std::vector<double> times;
  for (int i = 0; i < 7; ++i) times.push_back(20 * std::pow(2.0, i / 2.0));
  const DecayMeasurement m = measure_decay(f, times);
  CHECK(m.t == times);
  CHECK(m.fit.slope == doctest::Approx(-0.5).epsilon(0.1));
  for (double l2 : m.l2_norm) CHECK(l2 == doctest::Approx(m.l2_norm.front()).epsilon(1e-12));

  CHECK_THROWS_AS(measure_decay(SpinorField<double>(g), times), Error);
  try {
    measure_decay(f, {10, 250});
    FAIL("expected DomainTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainTooSmall);
  }
  CHECK_THROWS_AS(measure_decay(f, {5, 3}), Error);
  CHECK_THROWS_AS(measure_decay(f, {0.5, 3}), Error);
}
