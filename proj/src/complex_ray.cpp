#include "tns/complex_ray.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tns/fft.hpp"
#include "tns/spectral_ops.hpp"

namespace tns {

CField complexify(const SpectralField& u) {
  CField v(u.grid);
  v.c = u.c;
  return v;
}

SpectralField real_part(const CField& u) {
  // real part in physical space: (u_hat(k) + conj(u_hat(-k))) / 2
  SpectralField v(u.grid);
  const int n = u.n();
  for (int comp = 0; comp < 2; ++comp)
    for (int i = 0; i < n; ++i) {
      const int im = (n - i) % n;
      for (int j = 0; j < n; ++j) {
        const int jm = (n - j) % n;
        v.c[v.idx(comp, i, j)] =
            0.5 * (u.c[u.idx(comp, i, j)] + std::conj(u.c[u.idx(comp, im, jm)]));
      }
    }
  hermitian_symmetrize(v);
  return v;
}

double sobolev_norm_c(const CField& u, double s) {
  const int n = u.n();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double kx = u.grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = u.grid.wavenumber(j);
      const double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) continue;
      const double w = s == 0.0 ? 1.0 : std::pow(k2, s);
      sum += w * (std::norm(u.c[u.idx(0, i, j)]) + std::norm(u.c[u.idx(1, i, j)]));
    }
  }
  return std::sqrt(sum);
}

namespace {

void apply_mask_c(CField& u, double radius) {
  const int n = u.n();
  const double r2 = radius * radius;
  for (int comp = 0; comp < 2; ++comp)
    for (int i = 0; i < n; ++i) {
      const int kx = u.grid.wavenumber(i);
      for (int j = 0; j < n; ++j) {
        const int ky = u.grid.wavenumber(j);
        if (double(kx) * kx + double(ky) * ky > r2 || i == n / 2 || j == n / 2)
          u.c[u.idx(comp, i, j)] = Complex(0, 0);
      }
    }
}

CField leray_project_c(const CField& u) {
  const int n = u.n();
  CField out(u.grid);
  for (int i = 0; i < n; ++i) {
    const double kx = u.grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = u.grid.wavenumber(j);
      const double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) continue;
      const Complex coef =
          (-ky * u.c[u.idx(0, i, j)] + kx * u.c[u.idx(1, i, j)]) / k2;
      out.c[out.idx(0, i, j)] = -ky * coef;
      out.c[out.idx(1, i, j)] = kx * coef;
    }
  }
  return out;
}

// complex-valued physical samples (no real-part truncation)
void to_physical_c(const CField& u, int comp, bool gx, bool gy,
                   std::vector<Complex>& out) {
  const int n = u.n();
  out.resize(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double kx = u.grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = u.grid.wavenumber(j);
      const Complex c = u.c[u.idx(comp, i, j)];
      if (gx || gy) {
        const double k = gx ? kx : ky;
        out[size_t(i) * n + j] = Complex(0, 1) * k * c;
      } else {
        out[size_t(i) * n + j] = c;
      }
    }
  }
  Fft::plan(n).backward(out.data());
}

}  // namespace

CField nonlinear_term_c(const CField& u) {
  const int n = u.n();
  if (u.grid.n * u.grid.dealias_fraction < 4.0)
    throw std::invalid_argument(
        "nonlinear_term_c: resolution too small for requested dealiasing");
  CField um = u;
  apply_mask_c(um, u.grid.dealias_radius());
  std::vector<Complex> a1, a2, g1x, g1y, g2x, g2y;
  to_physical_c(um, 0, false, false, a1);
  to_physical_c(um, 1, false, false, a2);
  to_physical_c(um, 0, true, false, g1x);
  to_physical_c(um, 0, false, true, g1y);
  to_physical_c(um, 1, true, false, g2x);
  to_physical_c(um, 1, false, true, g2y);

  const size_t m = a1.size();
  const double scale = 1.0 / static_cast<double>(m);
  CField out(u.grid);
  std::vector<Complex> prod(m);
  for (int comp = 0; comp < 2; ++comp) {
    const auto& gx = comp == 0 ? g1x : g2x;
    const auto& gy = comp == 0 ? g1y : g2y;
    for (size_t p = 0; p < m; ++p) prod[p] = a1[p] * gx[p] + a2[p] * gy[p];
    Fft::plan(n).forward(prod.data());
    for (size_t p = 0; p < m; ++p)
      out.c[static_cast<size_t>(comp) * m + p] = scale * prod[p];
  }
  apply_mask_c(out, u.grid.dealias_radius());
  out.c[out.idx(0, 0, 0)] = Complex(0, 0);
  out.c[out.idx(1, 0, 0)] = Complex(0, 0);
  return leray_project_c(out);
}

ComplexTrajectory complex_ray_solve(const SpectralField& u0,
                                    const SpectralField& f, double theta,
                                    double s_max, int galerkin_n,
                                    const StepperConfig& cfg) {
  if (std::abs(theta) >= std::numbers::pi / 2.0)
    throw std::invalid_argument("complex_ray_solve: need |theta| < pi/2");
  if (galerkin_n > 32)
    throw std::invalid_argument(
        "complex_ray_solve: truncation capped at 32 modes per axis");
  cfg.validate();
  require_same_grid(u0, f, "complex_ray_solve");

  const GridSpec grid(galerkin_n, u0.grid.nu, u0.grid.dealias_fraction);
  const CField uc0 = complexify(restrict_to(u0, grid));
  const CField fc = complexify(restrict_to(f, grid));
  const int n = grid.n;
  const size_t m = static_cast<size_t>(n) * n;

  // per-mode integrating factors exp(-nu e^{i theta} |k|^2 ds)
  const Complex ray = Complex(std::cos(theta), std::sin(theta));
  std::vector<Complex> half(m), full(m);
  for (int i = 0; i < n; ++i) {
    const double kx = grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = grid.wavenumber(j);
      const double k2 = kx * kx + ky * ky;
      half[size_t(i) * n + j] = std::exp(-grid.nu * k2 * ray * (cfg.dt * 0.5));
      full[size_t(i) * n + j] = std::exp(-grid.nu * k2 * ray * cfg.dt);
    }
  }
  auto scale = [&](CField& u, const std::vector<Complex>& table) {
    for (size_t p = 0; p < m; ++p) {
      u.c[p] *= table[p];
      u.c[m + p] *= table[p];
    }
  };
  auto rhs = [&](const CField& u) {
    CField r = nonlinear_term_c(u);
    for (size_t p = 0; p < r.c.size(); ++p) r.c[p] = ray * (fc.c[p] - r.c[p]);
    return r;
  };
  auto axpy = [&](CField& y, const CField& x, Complex a) {
    for (size_t p = 0; p < y.c.size(); ++p) y.c[p] += a * x.c[p];
  };

  ComplexTrajectory traj;
  traj.grid = grid;
  traj.theta = theta;
  traj.dt = cfg.dt;
  traj.diag_alpha = cfg.diag_alpha;
  traj.f_halpha = sobolev_norm(restrict_to(f, grid), cfg.diag_alpha);

  const size_t n_steps = static_cast<size_t>(std::llround(s_max / cfg.dt));
  CField u = uc0;
  auto record = [&](double s, size_t step_index) {
    traj.s.push_back(s);
    traj.l2.push_back(sobolev_norm_c(u, 0.0));
    traj.ha1.push_back(sobolev_norm_c(u, cfg.diag_alpha + 1.0));
    traj.ha2.push_back(sobolev_norm_c(u, cfg.diag_alpha + 2.0));
    if (cfg.record_every > 0 &&
        (step_index % cfg.record_every == 0 || step_index == n_steps))
      traj.fields.emplace_back(s, u);
  };
  record(0.0, 0);

  for (size_t step = 1; step <= n_steps; ++step) {
    const double s_new = static_cast<double>(step) * cfg.dt;
    if (cfg.scheme == Scheme::if_rk2) {
      CField n1 = rhs(u);
      CField pred = u;
      axpy(pred, n1, cfg.dt);
      scale(pred, full);
      CField n2 = rhs(pred);
      scale(u, full);
      CField n1s = n1;
      scale(n1s, full);
      axpy(u, n1s, cfg.dt * 0.5);
      axpy(u, n2, cfg.dt * 0.5);
    } else {
      CField n1 = rhs(u);
      CField a = u;
      axpy(a, n1, cfg.dt * 0.5);
      scale(a, half);
      CField n2 = rhs(a);
      CField b = u;
      scale(b, half);
      axpy(b, n2, cfg.dt * 0.5);
      CField n3 = rhs(b);
      CField c = u;
      scale(c, full);
      CField n3s = n3;
      scale(n3s, half);
      axpy(c, n3s, cfg.dt);
      CField n4 = rhs(c);
      scale(u, full);
      CField n1s = n1;
      scale(n1s, full);
      axpy(u, n1s, cfg.dt / 6.0);
      CField n2s = n2;
      scale(n2s, half);
      axpy(u, n2s, cfg.dt / 3.0);
      scale(n3, half);
      axpy(u, n3, cfg.dt / 3.0);
      axpy(u, n4, cfg.dt / 6.0);
    }
    const double check = sobolev_norm_c(u, 0.0);
    if (!std::isfinite(check) || check > 1e100) {
      traj.blowup_s = s_new;
      break;
    }
    record(s_new, step);
  }
  return traj;
}

CField heat_solve_complex(const SpectralField& u0, const SpectralField& f,
                          double nu, Complex t) {
  require_same_grid(u0, f, "heat_solve_complex");
  const int n = u0.n();
  CField u(u0.grid);
  for (int i = 0; i < n; ++i) {
    const double kx = u0.grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = u0.grid.wavenumber(j);
      const double k2 = kx * kx + ky * ky;
      for (int comp = 0; comp < 2; ++comp) {
        const size_t idx = u.idx(comp, i, j);
        if (k2 == 0.0) {
          u.c[idx] = u0.c[idx];
          continue;
        }
        const Complex decay = std::exp(-nu * k2 * t);
        u.c[idx] = u0.c[idx] * decay +
                   f.c[idx] * ((1.0 - decay) / (nu * k2));
      }
    }
  }
  return u;
}

CField heat_time_derivative_complex(const SpectralField& u0,
                                    const SpectralField& f, double nu,
                                    Complex t) {
  const int n = u0.n();
  CField du(u0.grid);
  for (int i = 0; i < n; ++i) {
    const double kx = u0.grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = u0.grid.wavenumber(j);
      const double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) continue;
      const Complex decay = std::exp(-nu * k2 * t);
      for (int comp = 0; comp < 2; ++comp) {
        const size_t idx = du.idx(comp, i, j);
        du.c[idx] = (f.c[idx] - nu * k2 * u0.c[idx]) * decay;
      }
    }
  }
  return du;
}

CircleSamples heat_circle_samples(const SpectralField& u0,
                                  const SpectralField& f, double nu,
                                  double center, double radius, int m_samples) {
  if (m_samples < 16)
    throw std::invalid_argument("heat_circle_samples: need at least 16 samples");
  CircleSamples s;
  s.center = center;
  s.radius = radius;
  for (int j = 0; j < m_samples; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / m_samples;
    const Complex z = center + radius * Complex(std::cos(phi), std::sin(phi));
    s.angles.push_back(phi);
    s.fields.push_back(heat_solve_complex(u0, f, nu, z));
  }
  return s;
}

CauchyDerivative cauchy_derivative_bound(const CircleSamples& samples,
                                         double alpha) {
  const size_t m = samples.fields.size();
  if (m < 16)
    throw std::invalid_argument("cauchy_derivative_bound: need >= 16 samples");
  if (samples.angles.size() != m)
    throw std::invalid_argument("cauchy_derivative_bound: ragged samples");

  CauchyDerivative out;
  out.derivative = CField(samples.fields[0].grid);
  // (2 pi i)^{-1} contour integral of u(z)/(z-c)^2 collapses to the mean of
  // u(z_j) e^{-i phi_j} / r under the trapezoid rule
  double m_sup = 0.0;
  for (size_t j = 0; j < m; ++j) {
    const double phi = samples.angles[j];
    const Complex w =
        Complex(std::cos(phi), -std::sin(phi)) / (samples.radius * double(m));
    const CField& uz = samples.fields[j];
    for (size_t p = 0; p < out.derivative.c.size(); ++p)
      out.derivative.c[p] += w * uz.c[p];
    m_sup = std::max(m_sup, sobolev_norm_c(uz, alpha + 1.0));
  }

  VerificationReport rep;
  rep.id = "cauchy-derivative-bound";
  rep.times = {samples.center};
  rep.lhs = {sobolev_norm_c(out.derivative, alpha + 1.0)};
  rep.rhs = {m_sup / samples.radius};
  rep.details["radius"] = samples.radius;
  rep.details["samples"] = static_cast<double>(m);
  rep.details["m_sup"] = m_sup;
  rep.finalize();
  out.report = rep;
  return out;
}

}  // namespace tns
