#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "tns/forcing.hpp"
#include "tns/spectral_ops.hpp"

using namespace tns;
using tns::test::unit_divfree_mode;
using tns::test::unit_mode;

namespace {
const GridSpec grid32(32, 1.0);
const GridSpec grid64(64, 1.0);
}

TEST_CASE("sobolev norm on single modes") {
  // |k| = 1: every order gives the amplitude
  const SpectralField a = unit_mode(grid32, 1, 0, {0, 0}, {1, 0});
  for (double s : {-1.5, -1.0, 0.0, 0.5, 1.0, 2.0})
    CHECK(sobolev_norm(a, s) == doctest::Approx(1.0).epsilon(1e-14));

  // |k| = 5, amplitude 2: H^1 norm 2 * 5, H^-1 norm 2 / 5
  const SpectralField b = unit_mode(grid32, 3, 4, {4.0 / 5, 0}, {-3.0 / 5, 0}, 2.0);
  CHECK(sobolev_norm(b, 1.0) == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(sobolev_norm(b, -1.0) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(sobolev_norm(b, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("sobolev norm input validation") {
  SpectralField u(grid32);
  u.at(0, 1, 0) = Complex(1.0, 0.5);  // no conjugate partner
  CHECK_THROWS_AS(sobolev_norm(u, 1.0), std::invalid_argument);

  SpectralField v(grid32);
  v.mean_free = false;
  v.at(0, 0, 0) = Complex(1.0, 0.0);
  add_conjugate_pair(v, 1, 0, {1, 0}, {0, 0});
  CHECK_THROWS_AS(sobolev_norm(v, -0.5), std::invalid_argument);
  CHECK(sobolev_norm(v, 0.0) == doctest::Approx(1.0));  // mean excluded
}

TEST_CASE("leray projection kills gradients and fixes divergence-free fields") {
  // gradient field: u_hat parallel to k
  SpectralField grad(grid32);
  add_conjugate_pair(grad, 2, 1, Complex(2, 1), Complex(1, 0.5));
  const SpectralField pg = leray_project(grad);
  CHECK(max_abs_coeff(pg) <= 1e-15);

  // divergence-free input is (numerically) fixed
  const SpectralField df = unit_divfree_mode(grid32, 3, -2, 1.7, 0.3);
  const SpectralField pdf = leray_project(df);
  SpectralField diff = pdf - df;
  CHECK(max_abs_coeff(diff) <= 1e-15 * max_abs_coeff(df));

  // k = (1,0), u_hat = (1,1) -> (0,1)
  SpectralField m(grid32);
  add_conjugate_pair(m, 1, 0, {1, 0}, {1, 0});
  const SpectralField pm = leray_project(m);
  CHECK(std::abs(pm.at(0, 1, 0)) <= 1e-16);
  CHECK(pm.at(1, 1, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));

  // output divergence vanishes to one rounding per mode
  const SpectralField r = random_divergence_free_field(grid64, 1.0, 11) +
                          unit_mode(grid64, 5, 7, {1, 2}, {3, -1}, 0.9);
  const SpectralField pr = leray_project(r);
  CHECK(max_divergence(pr) <= 64.0 * 1e-15 * max_abs_coeff(pr));
  CHECK(is_divergence_free(pr));
}

TEST_CASE("leray projection is idempotent and self-adjoint") {
  SpectralField u = random_divergence_free_field(grid64, 1.0, 3);
  add_conjugate_pair(u, 4, 9, {0.3, 1.0}, {-0.2, 0.1});  // add a non-solenoidal part
  SpectralField v = random_divergence_free_field(grid64, 2.0, 4);
  add_conjugate_pair(v, 7, 2, {1.3, 0.2}, {0.4, -0.8});

  const SpectralField pu = leray_project(u);
  const SpectralField ppu = leray_project(pu);
  SpectralField diff = ppu - pu;
  CHECK(max_abs_coeff(diff) <= 1e-14 * max_abs_coeff(pu));

  const double a = l2_inner(leray_project(u), v);
  const double b = l2_inner(u, leray_project(v));
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("stokes power scaling") {
  const SpectralField u = unit_divfree_mode(grid32, 2, 0, 1.0);
  const SpectralField a0 = stokes_power(u, 0.0);
  SpectralField d = a0 - u;
  CHECK(max_abs_coeff(d) == 0.0);

  const SpectralField a1 = stokes_power(u, 1.0);
  CHECK(sobolev_norm(a1, 0.0) == doctest::Approx(4.0).epsilon(1e-14));

  SpectralField with_mean(grid32);
  with_mean.mean_free = false;
  with_mean.at(0, 0, 0) = Complex(1, 0);
  CHECK_THROWS_AS(stokes_power(with_mean, -0.5), std::invalid_argument);
}

TEST_CASE("A^{1/2} matches the H^1 norm mode by mode") {
  const SpectralField u = random_divergence_free_field(grid64, 1.5, 5);
  CHECK(sobolev_norm(stokes_power(u, 0.5), 0.0) ==
        doctest::Approx(sobolev_norm(u, 1.0)).epsilon(1e-12));
  CHECK(sobolev_norm(stokes_power(u, -0.25), 0.0) ==
        doctest::Approx(sobolev_norm(u, -0.5)).epsilon(1e-12));
}

TEST_CASE("advection of Taylor-Green matches the closed form") {
  // (u . grad)u = (sin 2x, sin 2y)/2, i.e. modes (+-2, 0) and (0, +-2)
  const GridSpec g(64, 0.1);
  const SpectralField u = taylor_green(g);
  const SpectralField adv = advect(u, u);
  SpectralField expected(g);
  // sin(2x)/2 -> coefficients -+ i/4 at (+-2, 0)
  expected.at(0, 2, 0) = Complex(0, -0.25);
  expected.at(0, -2, 0) = Complex(0, 0.25);
  expected.at(1, 0, 2) = Complex(0, -0.25);
  expected.at(1, 0, -2) = Complex(0, 0.25);
  SpectralField diff = adv - expected;
  CHECK(max_abs_coeff(diff) <= 1e-14);

  // the advection term is a pure gradient, so B(u,u) = 0
  CHECK(max_abs_coeff(nonlinear_term(u)) <= 1e-15);
}

TEST_CASE("nonlinear term edge cases") {
  const GridSpec g(64, 0.1);
  CHECK(max_abs_coeff(nonlinear_term(SpectralField(g))) == 0.0);

  // resolution too small for the requested dealiasing
  const GridSpec tiny(8, 1.0, 0.4);
  CHECK_THROWS_AS(nonlinear_term(SpectralField(tiny)), std::invalid_argument);

  // single divergence-free mode advects itself nowhere
  const SpectralField m = unit_divfree_mode(g, 3, 1, 1.0, 0.7);
  CHECK(max_abs_coeff(nonlinear_term(m)) <= 1e-15);
}

TEST_CASE("nonlinear term cancellation and symmetry preservation") {
  const GridSpec g(64, 0.1);
  for (uint64_t seed : {1u, 2u, 3u}) {
    const SpectralField u = random_divergence_free_field(g, 1.0, seed);
    const SpectralField b = nonlinear_term(u);
    CHECK(is_hermitian(b));
    CHECK(is_divergence_free(b));
    const double cancel = std::abs(l2_inner(b, u));
    const double scale = sobolev_norm(u, 1.0) * sobolev_norm(u, 1.0) *
                         sobolev_norm(u, 0.0);
    CHECK(cancel <= 1e-10 * scale);
  }
}

TEST_CASE("interpolation gap") {
  const GridSpec g = grid32;
  // single mode: equality
  const SpectralField m = unit_divfree_mode(g, 3, 4, 2.0);
  CHECK(interpolation_gap(m, 0.0, 1.0, 2.0, 0.5) ==
        doctest::Approx(1.0).epsilon(1e-13));

  // two equal-amplitude modes at |k| = 1 and |k| = 4:
  // ratio = sqrt(17) / 514^{1/4} < 1, computed from the explicit sums
  SpectralField two(g);
  add_conjugate_pair(two, 1, 0, {0, 0}, {1, 0});
  add_conjugate_pair(two, 4, 0, {0, 0}, {1, 0});
  const double expected = std::sqrt(17.0) / std::pow(514.0, 0.25);
  CHECK(interpolation_gap(two, 0.0, 1.0, 2.0, 0.5) ==
        doctest::Approx(expected).epsilon(1e-13));

  // random fields stay within (0, 1] up to round-off
  for (uint64_t seed = 0; seed < 8; ++seed) {
    const SpectralField u = random_divergence_free_field(g, 1.0 + 0.2 * seed, seed);
    const double gap = interpolation_gap(u, 0.0, 1.0, 2.0, 0.5);
    CHECK(gap > 0.0);
    CHECK(gap <= 1.0 + 1e-12);
    const double gap2 = interpolation_gap(u, -1.0, 0.5, 2.0, 0.5);
    CHECK(gap2 <= 1.0 + 1e-12);
  }

  CHECK_THROWS_AS(interpolation_gap(SpectralField(g), 0.0, 1.0, 2.0, 0.5),
                  std::domain_error);
  CHECK_THROWS_AS(interpolation_gap(m, 0.0, 1.1, 2.0, 0.5),
                  std::invalid_argument);
}

TEST_CASE("spectral dump round-trips exactly") {
  const SpectralField u = random_divergence_free_field(grid32, 1.0, 42);
  const auto path = std::filesystem::temp_directory_path() / "tns_dump.csv";
  write_spectral_csv(u, path);
  const SpectralField v = read_spectral_csv(path, u.grid);
  for (size_t i = 0; i < u.c.size(); ++i) CHECK(u.c[i] == v.c[i]);
  std::filesystem::remove(path);
}
