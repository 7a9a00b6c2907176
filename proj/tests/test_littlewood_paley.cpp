#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "test_util.hpp"
#include "tns/littlewood_paley.hpp"
#include "tns/spectral_ops.hpp"

using namespace tns;
using tns::test::unit_divfree_mode;

TEST_CASE("bump function shape") {
  CHECK(bump_chi(0.0) == 1.0);
  CHECK(bump_chi(0.5) == 1.0);
  CHECK(bump_chi(1.0) == 0.0);
  CHECK(bump_chi(2.0) == 0.0);
  CHECK(bump_chi(0.75) == doctest::Approx(0.5).epsilon(1e-15));  // symmetry point
  // nonincreasing, values in [0, 1]
  double prev = 1.0;
  for (int i = 0; i <= 400; ++i) {
    const double r = i / 100.0;
    const double v = bump_chi(r);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
}

TEST_CASE("shell multipliers telescope and localize") {
  // finite telescoping: sum phi_q = chi(2^{-(Q+1)} xi)
  for (double xi : {0.0, 0.3, 1.0, 1.7, 5.0, 23.0, 200.0}) {
    for (int q_top : {3, 6, 9}) {
      double sum = 0.0;
      for (int q = -1; q <= q_top; ++q) sum += phi_q(q, xi);
      CHECK(sum == doctest::Approx(bump_chi(std::ldexp(xi, -(q_top + 1))))
                       .epsilon(1e-14));
    }
  }
  // |xi| = 1 lives entirely in shell 0
  CHECK(phi_q(0, 1.0) == doctest::Approx(1.0));
  CHECK(phi_q(-1, 1.0) == 0.0);
  CHECK(phi_q(1, 1.0) == 0.0);
  // xi = 0 lives in shell -1
  CHECK(phi_q(-1, 0.0) == 1.0);
  CHECK(phi_q(0, 0.0) == 0.0);
  CHECK_THROWS_AS(phi_q(-2, 1.0), std::invalid_argument);
}

TEST_CASE("projections reconstruct and are almost orthogonal") {
  const GridSpec g(64, 1.0);
  const SpectralField u = random_divergence_free_field(g, 1.0, 9);
  const int q_top = max_shell(g);

  SpectralField sum(g);
  for (int q = -1; q <= q_top; ++q) sum += lp_project(u, q);
  SpectralField diff = sum - u;
  CHECK(sobolev_norm(diff, 0.0) <= 1e-12 * sobolev_norm(u, 0.0));

  // shells two apart have disjoint supports
  for (int q = -1; q <= q_top - 2; ++q)
    for (int p = q + 2; p <= q_top; ++p)
      CHECK(max_abs_coeff(lp_project(lp_project(u, q), p)) == 0.0);

  // single mode |k| = 1 -> entirely shell 0
  const SpectralField m = unit_divfree_mode(g, 1, 0);
  SpectralField d0 = lp_project(m, 0) - m;
  CHECK(max_abs_coeff(d0) <= 1e-16);

  // lp_project commutes with leray_project and stokes_power
  SpectralField w = u;
  add_conjugate_pair(w, 5, 2, {0.4, 1.0}, {0.7, -0.3});
  SpectralField c1 = lp_project(leray_project(w), 3) -
                     leray_project(lp_project(w, 3));
  CHECK(max_abs_coeff(c1) <= 1e-15 * max_abs_coeff(w));
  SpectralField c2 = lp_project(stokes_power(u, 0.5), 3) -
                     stokes_power(lp_project(u, 3), 0.5);
  CHECK(max_abs_coeff(c2) <= 1e-15 * max_abs_coeff(u));
}

TEST_CASE("shell energies agree with explicit projections") {
  const GridSpec g(32, 1.0);
  const SpectralField u = random_divergence_free_field(g, 1.5, 21);
  const auto energies = shell_energies(u);
  const auto decomp = ShellDecomposition::decompose(u);
  REQUIRE(int(energies.size()) == decomp.q_max() + 2);
  for (int q = -1; q <= decomp.q_max(); ++q)
    CHECK(energies[q + 1] ==
          doctest::Approx(sobolev_norm(decomp.shell(q), 0.0)).epsilon(1e-12));
}

// per-mode envelope: every k meets at most two shells whose lambda_q is
// within a factor 2 of max(|k|, 1), so the norm ratio obeys dyadic bounds
TEST_CASE("lp/sobolev ratio envelope by brute force over a 64^2 grid") {
  const GridSpec g(64, 1.0);
  const int q_top = max_shell(g);
  for (double s : {-2.0, -1.0, -0.5, 0.0, 1.0, 2.0}) {
    const double lo = std::ldexp(1.0, -int(std::abs(s)) - 1);
    const double hi = std::ldexp(1.0, int(std::abs(s)) + 1);
    for (int i = 0; i < g.n; ++i) {
      const double kx = g.wavenumber(i);
      for (int j = 0; j < g.n; ++j) {
        const double ky = g.wavenumber(j);
        const double kn = std::hypot(kx, ky);
        if (kn == 0.0) continue;
        double w = 0.0;  // sum_q lambda_q^{2s} phi_q(k)^2
        for (int q = -1; q <= q_top; ++q) {
          const double p = phi_q(q, kn);
          w += std::pow(shell_lambda(q), 2.0 * s) * p * p;
        }
        const double ratio = std::sqrt(w) / std::pow(kn, s);
        CHECK(ratio >= lo - 1e-12);
        CHECK(ratio <= hi + 1e-12);
      }
    }
  }
}

TEST_CASE("lp norm stays inside the envelope on random fields") {
  for (int n : {32, 64, 128, 256}) {
    const GridSpec g(n, 1.0);
    const SpectralField u = random_divergence_free_field(g, 1.0, 17);
    for (double s : {-2.0, -1.0, -0.5, 0.0, 1.0, 2.0}) {
      const double ratio = lp_norm(u, s) / sobolev_norm(u, s);
      CHECK(ratio >= std::ldexp(1.0, -int(std::abs(s)) - 1));
      CHECK(ratio <= std::ldexp(1.0, int(std::abs(s)) + 1));
    }
  }
  CHECK(lp_norm(SpectralField(GridSpec(32, 1.0)), 1.0) == 0.0);
}

TEST_CASE("single mode lp norm") {
  const GridSpec g(32, 1.0);
  const SpectralField m = unit_divfree_mode(g, 1, 0);
  for (double s : {-1.0, 0.0, 0.7, 2.0})
    CHECK(lp_norm(m, s) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("bernstein ratio") {
  const GridSpec g(64, 1.0);
  // single mode: ||u||_inf / ||u||_2 = sqrt(2) at unit L2 amplitude
  const SpectralField m = unit_divfree_mode(g, 1, 0);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(bernstein_ratio(m, 0, 2.0, inf) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(bernstein_ratio(m, 0, 4.0, 4.0) == doctest::Approx(1.0).epsilon(1e-12));

  // bounded uniformly over random shell fields, q in {0..6} (measured cap)
  double worst = 0.0;
  for (int q = 0; q <= 6; ++q) {
    for (uint64_t seed = 0; seed < 6; ++seed) {
      const SpectralField u = random_divergence_free_field(GridSpec(256, 1.0),
                                                           0.5, seed);
      const SpectralField uq = lp_project(u, q);
      if (sobolev_norm(uq, 0.0) == 0.0) continue;
      worst = std::max(worst, bernstein_ratio(uq, q, 2.0, inf));
    }
  }
  CHECK(worst > 0.0);
  CHECK(worst <= 4.0);  // envelope frozen from the ensemble sweep

  CHECK_THROWS_AS(bernstein_ratio(SpectralField(g), 0, 2.0, inf),
                  std::domain_error);
  CHECK_THROWS_AS(bernstein_ratio(m, 0, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("shell energy table export") {
  const GridSpec g(32, 1.0);
  const SpectralField u = random_divergence_free_field(g, 1.0, 2);
  const auto path = std::filesystem::temp_directory_path() / "tns_shells.csv";
  write_shell_energy_csv(u, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "q,lambda_q,l2_energy");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == max_shell(g) + 2);
  std::filesystem::remove(path);
}
