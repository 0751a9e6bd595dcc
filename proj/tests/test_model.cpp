#include "doctest.h"

#include <random>

#include "dirac1d/evolve.hpp"
#include "dirac1d/model.hpp"
#include "test_support.hpp"

using namespace dirac1d;
using C = std::complex<double>;

namespace {

// Central-difference Wirtinger derivative dW/dz̄ = (dW/dx + i dW/dy) / 2.
std::pair<C, C> wirtinger_oracle(const PotentialSpec& s, C u, C v, double eps = 1e-5) {
  auto W = [&](C uu, C vv) { return eval_potential(s, uu, vv); };
  const C du = 0.5 * (C((W(u + eps, v) - W(u - eps, v)) / (2 * eps)) +
                      C(0, 1) * ((W(u + C(0, eps), v) - W(u - C(0, eps), v)) / (2 * eps)));
  const C dv = 0.5 * (C((W(u, v + eps) - W(u, v - eps)) / (2 * eps)) +
                      C(0, 1) * ((W(u, v + C(0, eps)) - W(u, v - C(0, eps))) / (2 * eps)));
  return {du, dv};
}

std::vector<PotentialSpec> all_presets() {
  return {PotentialSpec::mtm(),          PotentialSpec::gross_neveu(),      PotentialSpec::coupled_mode(1.3),
          PotentialSpec::photonic(0.7, -1.1), PotentialSpec::feshbach(0.9), PotentialSpec(0.3, -0.8, 1.7, 0.4, 0.6)};
}

}  // namespace

TEST_CASE("potential values") {
  CHECK(eval_potential(PotentialSpec::mtm(), C(1), C(1)) == doctest::Approx(4));
  CHECK(eval_potential(PotentialSpec(1.2, 3, 4, 5, 6), C(0), C(0)) == 0);
  // coupled-mode with α = 1 at u = 1, v = i: (|u|²+|v|²)² + 2|u|²|v|² = 6
  CHECK(eval_potential(PotentialSpec::coupled_mode(1), C(1), C(0, 1)) == doctest::Approx(6));
  // Gross-Neveu is 2 (ūv + uv̄)²
  const C u(0.3, -0.2), v(-0.5, 0.9);
  const double s = 2 * (std::conj(u) * v).real();
  CHECK(eval_potential(PotentialSpec::gross_neveu(), u, v) == doctest::Approx(2 * s * s));
  // photonic: α s (|u|²+|v|²) + β (s² - 2|u|²|v|²)
  const double a = std::norm(u), b = std::norm(v);
  CHECK(eval_potential(PotentialSpec::photonic(0.7, -1.1), u, v) ==
        doctest::Approx(0.7 * s * (a + b) - 1.1 * (s * s - 2 * a * b)));
}

TEST_CASE("forces: closed forms and the Wirtinger oracle") {
  const auto [fu, fv] = eval_force(PotentialSpec::mtm(), C(1), C(2));
  CHECK(std::abs(fu - C(16)) < 1e-14);
  CHECK(std::abs(fv - C(8)) < 1e-14);

  const auto [gu, gv] = eval_force(PotentialSpec(1, 2, 3, 4, 5), C(0), C(0));
  CHECK(gu == C(0));
  CHECK(gv == C(0));

  // Gross-Neveu at v = 0: s = 0 kills both forces
  const auto [nu, nv] = eval_force(PotentialSpec::gross_neveu(), C(1), C(0));
  const auto [ou, ov] = wirtinger_oracle(PotentialSpec::gross_neveu(), C(1), C(0));
  CHECK(std::abs(nu) < 1e-14);
  CHECK(std::abs(nv) < 1e-14);
  CHECK(std::abs(ou) < 1e-8);
  CHECK(std::abs(ov) < 1e-8);

  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  for (const auto& spec : all_presets())
    for (int i = 0; i < 50; ++i) {
      const C u(g(rng), g(rng)), v(g(rng), g(rng));
      const auto [cu, cv] = eval_force(spec, u, v);
      const auto [wu, wv] = wirtinger_oracle(spec, u, v);
      CHECK(std::abs(cu - wu) <= 1e-8 * (1 + std::abs(cu)));
      CHECK(std::abs(cv - wv) <= 1e-8 * (1 + std::abs(cv)));
    }
}

TEST_CASE("potential properties: gauge invariance, symmetry, Euler identity") {
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  for (const auto& spec : all_presets())
    for (int i = 0; i < 100; ++i) {
      const C u(g(rng), g(rng)), v(g(rng), g(rng));
      const C ph = std::polar(1.0, angle(rng));
      const double W = eval_potential(spec, u, v);
      CHECK(std::abs(eval_potential(spec, ph * u, ph * v) - W) < 1e-12 * (1 + std::abs(W)));
      CHECK(std::abs(eval_potential(spec, v, u) - W) < 1e-12 * (1 + std::abs(W)));
      if (spec.beta_sextic() == 0) {
        const auto [fu, fv] = eval_force(spec, u, v);
        const double euler = (std::conj(u) * fu + std::conj(v) * fv).real();
        CHECK(std::abs(euler - 2 * W) < 1e-12 * (1 + std::abs(W)));
      }
    }
}

TEST_CASE("moduli-only flag") {
  CHECK(PotentialSpec::mtm().moduli_only());
  CHECK(PotentialSpec::coupled_mode(2).moduli_only());
  CHECK(PotentialSpec::feshbach(1).moduli_only());
  CHECK_FALSE(PotentialSpec::gross_neveu().moduli_only());
  CHECK_FALSE(PotentialSpec::photonic(1, 0).moduli_only());
  CHECK_THROWS_AS(PotentialSpec(0, 4, 0, 0, 0, false), Error);
  CHECK_THROWS_AS(PotentialSpec(0, 0, 1, 0, 0, true), Error);
  CHECK_NOTHROW(PotentialSpec(0, 0, 1, 0, 0, false));

  // the phase frequencies equal the moduli derivatives of W
  const PotentialSpec s(0.4, 1.5, 0, 0, 0.8);
  const C u(0.6, 0.2), v(-0.3, 0.7);
  const auto [A, B] = moduli_frequencies(s, std::norm(u), std::norm(v));
  const auto [fu, fv] = eval_force(s, u, v);
  CHECK(std::abs(A * u - fu) < 1e-14);
  CHECK(std::abs(B * v - fv) < 1e-14);
}

TEST_CASE("preset parsing") {
  const PotentialSpec m = PotentialSpec::from_preset("mtm");
  CHECK(m.alpha1() == 0);
  CHECK(m.alpha2() == 4);
  CHECK(m.alpha3() == 0);
  CHECK(m.alpha4() == 0);
  CHECK(m.moduli_only());
  CHECK(PotentialSpec::from_preset("gross_neveu") == PotentialSpec(0, 0, 2, 0));
  CHECK(PotentialSpec::from_preset("coupled_mode(1.5)") == PotentialSpec(1.5, 6, 0, 0));
  CHECK(PotentialSpec::from_preset(" photonic( 0.5 , -2 ) ") == PotentialSpec(0, 4, -2, 0.5));
  CHECK(PotentialSpec::from_preset("feshbach(3)") == PotentialSpec(0, 0, 0, 0, 3));
  CHECK(PotentialSpec::from_preset("linear").is_zero());
  for (const char* bad : {"", "thirring", "coupled_mode", "coupled_mode()", "coupled_mode(x)", "photonic(1)",
                          "mtm(1)", "coupled_mode(1", "coupled_mode(nan)"})
    CHECK_THROWS_AS(PotentialSpec::from_preset(bad), Error);
}

TEST_CASE("frame change") {
  const auto T = FrameTransform<double>::forward();
  const auto Ti = FrameTransform<double>::inverse();
  CHECK((T * Ti - Eigen::Matrix2cd::Identity()).norm() < 1e-15);
  Eigen::Vector2cd e(1, 0);
  const Eigen::Vector2cd psi = T * e;
  CHECK(std::abs(psi[0] - C(1)) < 1e-15);
  CHECK(std::abs(psi[1] - C(0, -1)) < 1e-15);

  const PeriodicGrid<double> grid(10, 64);
  SpinorField<double> f(grid);
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  for (Eigen::Index j = 0; j < grid.N; ++j) {
    f.u[j] = C(g(rng), g(rng));
    f.v[j] = C(g(rng), g(rng));
  }
  const auto back = from_psi_frame(to_psi_frame(f));
  CHECK((back.u - f.u).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((back.v - f.v).cwiseAbs().maxCoeff() < 1e-12);
}

// MTM with W = 4|u|²|v|² in the u-frame is the ψ-frame system
//   i ψ_t - ψ - φ_x = (ψ² + φ²) ψ̄,   i φ_t + φ + ψ_x = (ψ² + φ²) φ̄.
TEST_CASE("MTM in the psi frame: residual vanishes at O(dt^2)") {
  SimConfig c;
  c.potential = PotentialSpec::mtm();
  c.initial = GaussianProfile{0.7, 1.5, 0, 0.5};
  c.L = 20;
  c.N = 256;
  c.T_final = 0.5;
  const double t_mid = 0.5;

  auto residual = [&](double dt) {
    // central time difference from states at t_mid ± dt, each integrated with steps of dt/8
    auto state_at = [&](double t) {
      SimConfig cc = c;
      cc.dt = dt / 8;
      cc.T_final = t;
      cc.cadence = 1 << 30;
      SpinorField<double> out(PeriodicGrid<double>(c.L, c.N));
      run(cc, {}, &out);
      return to_psi_frame(out);
    };
    const auto m = state_at(t_mid - dt), p = state_at(t_mid + dt), z = state_at(t_mid);
    const C I(0, 1);
    const ComplexVector<double> psi_t = (p.u - m.u) / (2 * dt), phi_t = (p.v - m.v) / (2 * dt);
    const ComplexVector<double> psi_x = spectral_derivative(z.grid, z.u), phi_x = spectral_derivative(z.grid, z.v);
    double r = 0;
    for (Eigen::Index j = 0; j < c.N; ++j) {
      const C s = z.u[j] * z.u[j] + z.v[j] * z.v[j];
      r = std::max(r, std::abs(I * psi_t[j] - z.u[j] - phi_x[j] - s * std::conj(z.u[j])));
      r = std::max(r, std::abs(I * phi_t[j] + z.v[j] + psi_x[j] - s * std::conj(z.v[j])));
    }
    return r;
  };
  const double r1 = residual(0.02), r2 = residual(0.01);
  INFO("residuals " << r1 << " " << r2);
  CHECK(r1 < 1e-2);
  CHECK(r1 / r2 == doctest::Approx(4).epsilon(0.15));
}
