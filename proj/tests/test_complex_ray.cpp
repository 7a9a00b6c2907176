#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "tns/complex_ray.hpp"
#include "tns/spectral_ops.hpp"

using namespace tns;

namespace {

SpectralField small_data(const GridSpec& g, double amp, uint64_t seed) {
  SpectralField u = random_sobolev_field(g, 1.5, 0.25, amp, seed);
  return u;
}

}  // namespace

TEST_CASE("complexified norms extend the real ones") {
  const GridSpec g(16, 1.0);
  const SpectralField u = random_divergence_free_field(g, 1.0, 2);
  const CField uc = complexify(u);
  for (double s : {-1.0, 0.0, 0.5, 1.5})
    CHECK(sobolev_norm_c(uc, s) ==
          doctest::Approx(sobolev_norm(u, s)).epsilon(1e-14));
  const SpectralField back = real_part(uc);
  SpectralField diff = back - u;
  CHECK(max_abs_coeff(diff) <= 1e-15);
}

TEST_CASE("complex nonlinear term agrees with the real one on real data") {
  const GridSpec g(16, 1.0);
  const SpectralField u = random_divergence_free_field(g, 1.0, 5);
  const CField bc = nonlinear_term_c(complexify(u));
  const SpectralField br = nonlinear_term(u);
  double worst = 0.0;
  for (size_t i = 0; i < br.c.size(); ++i)
    worst = std::max(worst, std::abs(bc.c[i] - br.c[i]));
  CHECK(worst <= 1e-13 * (1.0 + max_abs_coeff(br)));
}

TEST_CASE("ray at theta = 0 matches the real solver on the same truncation") {
  const GridSpec g(16, 0.5);
  const SpectralField u0 = small_data(g, 0.5, 7);
  const SpectralField f = random_divergence_free_field(g, 2.0, 8);
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.scheme = Scheme::if_rk4;
  cfg.t_final = 0.3;
  cfg.diag_alpha = -0.5;

  const ComplexTrajectory ray = complex_ray_solve(u0, f, 0.0, 0.3, 16, cfg);
  const Trajectory real_traj = nse_solve(u0, f, cfg);
  REQUIRE(!ray.blowup_s);
  REQUIRE(ray.s.size() == real_traj.t.size());
  for (size_t i = 0; i < ray.s.size(); i += 25) {
    CHECK(ray.l2[i] == doctest::Approx(real_traj.l2[i]).epsilon(1e-8));
    CHECK(ray.ha1[i] == doctest::Approx(real_traj.ha1[i]).epsilon(1e-8));
    CHECK(ray.ha2[i] == doctest::Approx(real_traj.ha2[i]).epsilon(1e-8));
  }
}

TEST_CASE("conjugate rays have identical diagnostics") {
  const GridSpec g(16, 0.5);
  const SpectralField u0 = small_data(g, 0.4, 9);
  const SpectralField f = random_divergence_free_field(g, 2.0, 10);
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.scheme = Scheme::if_rk2;
  cfg.t_final = 0.2;
  const double theta = std::numbers::pi / 6.0;
  const ComplexTrajectory plus = complex_ray_solve(u0, f, theta, 0.2, 16, cfg);
  const ComplexTrajectory minus = complex_ray_solve(u0, f, -theta, 0.2, 16, cfg);
  REQUIRE(plus.s.size() == minus.s.size());
  for (size_t i = 0; i < plus.s.size(); i += 20) {
    CHECK(plus.ha1[i] == doctest::Approx(minus.ha1[i]).epsilon(1e-10));
    CHECK(plus.ha2[i] == doctest::Approx(minus.ha2[i]).epsilon(1e-10));
  }
}

TEST_CASE("blow-up along an aggressive ray is reported, not thrown") {
  const GridSpec g(16, 1e-3);
  SpectralField u0 = taylor_green(g, 40.0);
  StepperConfig cfg;
  cfg.dt = 5e-2;
  cfg.scheme = Scheme::if_rk4;
  cfg.t_final = 50.0;
  const double theta = 1.55;  // just inside the half-plane
  CHECK_THROWS_AS(complex_ray_solve(u0, SpectralField(g), 1.6, 1.0, 16, cfg),
                  std::invalid_argument);
  const ComplexTrajectory ray =
      complex_ray_solve(u0, SpectralField(g), theta, 50.0, 16, cfg);
  // with cos(theta) tiny the discrete system runs away; recorded as data
  CHECK(ray.blowup_s.has_value());
}

TEST_CASE("heat flow in complex time and the contour derivative") {
  const GridSpec g(32, 1.0);
  const SpectralField u0 = random_divergence_free_field(g, 2.5, 11);
  const SpectralField f = random_divergence_free_field(g, 3.0, 12);
  const double nu = 1.0, center = 1.0, radius = 0.5;
  const double alpha = -0.5;

  const CircleSamples samples =
      heat_circle_samples(u0, f, nu, center, radius, 64);
  const CauchyDerivative cd = cauchy_derivative_bound(samples, alpha);

  // matches the exact per-mode derivative to quadrature accuracy
  const CField exact = heat_time_derivative_complex(u0, f, nu, center);
  double worst = 0.0;
  for (size_t i = 0; i < exact.c.size(); ++i)
    worst = std::max(worst, std::abs(cd.derivative.c[i] - exact.c[i]));
  CHECK(worst <= 1e-9);

  // growth bound holds with margin
  CHECK(cd.report.pass);

  // cross-check against a real-axis finite difference
  const double h = 1e-5;
  const CField up = heat_solve_complex(u0, f, nu, center + h);
  const CField um = heat_solve_complex(u0, f, nu, center - h);
  CField fd(g);
  for (size_t i = 0; i < fd.c.size(); ++i)
    fd.c[i] = (up.c[i] - um.c[i]) / (2.0 * h);
  double fd_err = 0.0;
  for (size_t i = 0; i < fd.c.size(); ++i)
    fd_err = std::max(fd_err, std::abs(cd.derivative.c[i] - fd.c[i]));
  CHECK(fd_err <= 1e-6);

  // shrinking the circle loosens the bound monotonically
  double prev_rhs = cd.report.rhs[0];
  for (double r : {0.25, 0.125}) {
    const auto s = heat_circle_samples(u0, f, nu, center, r, 64);
    const auto c = cauchy_derivative_bound(s, alpha);
    CHECK(c.report.rhs[0] > prev_rhs);
    prev_rhs = c.report.rhs[0];
  }

  CHECK_THROWS_AS(heat_circle_samples(u0, f, nu, center, radius, 8),
                  std::invalid_argument);
}
