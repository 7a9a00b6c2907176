#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tns/evolution.hpp"
#include "tns/field.hpp"
#include "tns/report.hpp"

namespace tns {

// Complexified vector field: the same coefficient layout as SpectralField
// but without the Hermitian constraint (physical values are complex).
struct CField {
  GridSpec grid;
  std::vector<Complex> c;

  CField() = default;
  explicit CField(const GridSpec& g)
      : grid(g), c(static_cast<size_t>(2) * g.modes(), Complex(0, 0)) {}
  int n() const { return grid.n; }
  size_t idx(int comp, int ix, int iy) const {
    return (static_cast<size_t>(comp) * grid.n + ix) * grid.n + iy;
  }
  Complex& at(int comp, int kx, int ky) {
    return c[idx(comp, grid.index_of(kx), grid.index_of(ky))];
  }
  Complex at(int comp, int kx, int ky) const {
    return c[idx(comp, grid.index_of(kx), grid.index_of(ky))];
  }
};

CField complexify(const SpectralField& u);
SpectralField real_part(const CField& u);

// (Sum_{k != 0} |k|^{2s} |u_hat(k)|^2)^{1/2}; for u = u1 + i u2 with real
// parts u1, u2 this equals (||u1||_{H^s}^2 + ||u2||_{H^s}^2)^{1/2}
double sobolev_norm_c(const CField& u, double s);

CField nonlinear_term_c(const CField& u);  // dealiased P(u . grad u)

// Trajectory of the Galerkin system along the ray t = s e^{i theta}.
// Blow-up near the boundary of the analyticity domain is expected and is
// recorded, not thrown.
struct ComplexTrajectory {
  GridSpec grid;
  double theta = 0.0;
  double dt = 0.0;
  double diag_alpha = -0.5;
  std::vector<double> s;
  std::vector<double> l2, ha1, ha2;
  std::vector<std::pair<double, CField>> fields;
  std::optional<double> blowup_s;
  double f_halpha = 0.0;
};

// Integrates du/ds = e^{i theta} (f - B(u,u) - nu A u) on a coarse Galerkin
// truncation (galerkin_n modes per axis); the viscous factor
// exp(-nu e^{i theta} |k|^2 ds) is exact per mode.
ComplexTrajectory complex_ray_solve(const SpectralField& u0,
                                    const SpectralField& f, double theta,
                                    double s_max, int galerkin_n,
                                    const StepperConfig& cfg);

// heat flow continued to complex time (entire in t per mode)
CField heat_solve_complex(const SpectralField& u0, const SpectralField& f,
                          double nu, Complex t);
CField heat_time_derivative_complex(const SpectralField& u0,
                                    const SpectralField& f, double nu,
                                    Complex t);

// solution samples on a circle |z - center| = radius in complex time
struct CircleSamples {
  double center = 0.0;
  double radius = 0.0;
  std::vector<double> angles;  // equispaced in [0, 2pi)
  std::vector<CField> fields;
};

CircleSamples heat_circle_samples(const SpectralField& u0,
                                  const SpectralField& f, double nu,
                                  double center, double radius, int m_samples);

// Trapezoid evaluation of (2 pi i)^{-1} contour_int u(z)/(z - center)^2 dz and
// the growth bound ||u_t(center)||_{H^{alpha+1}} <= max_circle ||u||/radius.
struct CauchyDerivative {
  CField derivative;
  VerificationReport report;  // lhs = ||u_t||, rhs = M_sup / r
};

CauchyDerivative cauchy_derivative_bound(const CircleSamples& samples,
                                         double alpha);

}  // namespace tns
