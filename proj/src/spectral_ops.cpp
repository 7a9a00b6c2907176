#include "tns/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "tns/fft.hpp"

namespace tns {

double sobolev_norm(const SpectralField& u, double s) {
  require_hermitian(u, "sobolev_norm");
  const int n = u.n();
  if (s < 0.0) {
    const double mean = std::abs(u.at(0, 0, 0)) + std::abs(u.at(1, 0, 0));
    if (mean != 0.0)
      throw std::invalid_argument(
          "sobolev_norm: negative order requires a mean-free field");
  }
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

double l2_inner(const SpectralField& u, const SpectralField& v) {
  require_same_grid(u, v, "l2_inner");
  double sum = 0.0;
  for (size_t i = 0; i < u.c.size(); ++i)
    sum += u.c[i].real() * v.c[i].real() + u.c[i].imag() * v.c[i].imag();
  return sum;
}

SpectralField leray_project(const SpectralField& u) {
  require_hermitian(u, "leray_project");
  const int n = u.n();
  SpectralField out(u.grid);
  for (int i = 0; i < n; ++i) {
    const double kx = u.grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = u.grid.wavenumber(j);
      const double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) continue;  // zero mode dropped: evolution is mean-free
      const Complex u1 = u.c[u.idx(0, i, j)];
      const Complex u2 = u.c[u.idx(1, i, j)];
      // component along k-perp = (-ky, kx); k . out = c*(ky*kx - kx*ky) = 0
      const Complex coef = (-ky * u1 + kx * u2) / k2;
      out.c[out.idx(0, i, j)] = -ky * coef;
      out.c[out.idx(1, i, j)] = kx * coef;
    }
  }
  out.mean_free = true;
  return out;
}

SpectralField stokes_power(const SpectralField& u, double a) {
  require_hermitian(u, "stokes_power");
  const int n = u.n();
  if (a < 0.0) {
    const double mean = std::abs(u.at(0, 0, 0)) + std::abs(u.at(1, 0, 0));
    if (mean != 0.0)
      throw std::invalid_argument(
          "stokes_power: negative power requires a mean-free field");
  }
  SpectralField out(u.grid);
  out.mean_free = u.mean_free;
  for (int i = 0; i < n; ++i) {
    const double kx = u.grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = u.grid.wavenumber(j);
      const double k2 = kx * kx + ky * ky;
      const double w = k2 == 0.0 ? (a == 0.0 ? 1.0 : 0.0) : std::pow(k2, a);
      out.c[out.idx(0, i, j)] = w * u.c[u.idx(0, i, j)];
      out.c[out.idx(1, i, j)] = w * u.c[u.idx(1, i, j)];
    }
  }
  return out;
}

namespace {

// backward transform of coeffs * multiplier into real physical samples
void to_physical(const SpectralField& u, int comp, const Fft& fft, Workspace& w,
                 std::vector<double>& out, bool grad_x, bool grad_y) {
  const int n = u.n();
  const size_t base = static_cast<size_t>(comp) * n * n;
  if (!grad_x && !grad_y) {
    std::copy(u.c.begin() + base, u.c.begin() + base + size_t(n) * n,
              w.spec.begin());
  } else {
    for (int i = 0; i < n; ++i) {
      const double kx = u.grid.wavenumber(i);
      for (int j = 0; j < n; ++j) {
        const double ky = u.grid.wavenumber(j);
        const double k = grad_x ? kx : ky;
        const Complex v = u.c[base + size_t(i) * n + j];
        w.spec[size_t(i) * n + j] = Complex(-k * v.imag(), k * v.real());  // i*k*v
      }
    }
  }
  fft.backward(w.spec.data());
  for (size_t m = 0; m < out.size(); ++m) out[m] = w.spec[m].real();
}

}  // namespace

void physical_component(const SpectralField& u, int comp,
                        std::vector<double>& out) {
  const int n = u.n();
  out.resize(static_cast<size_t>(n) * n);
  Workspace& w = workspace_for(n);
  to_physical(u, comp, Fft::plan(n), w, out, false, false);
}

SpectralField advect(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b, "advect");
  const int n = a.n();
  if (a.grid.n * a.grid.dealias_fraction < 4.0)
    throw std::invalid_argument(
        "advect: resolution too small for requested dealiasing");
  const SpectralField am = masked(a);
  const SpectralField bm = masked(b);
  const Fft& fft = Fft::plan(n);
  Workspace& w = workspace_for(n);

  to_physical(am, 0, fft, w, w.phys_a1, false, false);
  to_physical(am, 1, fft, w, w.phys_a2, false, false);
  to_physical(bm, 0, fft, w, w.phys_g[0], true, false);   // dx b1
  to_physical(bm, 0, fft, w, w.phys_g[1], false, true);   // dy b1
  to_physical(bm, 1, fft, w, w.phys_g[2], true, false);   // dx b2
  to_physical(bm, 1, fft, w, w.phys_g[3], false, true);   // dy b2

  SpectralField out(a.grid);
  const size_t m = static_cast<size_t>(n) * n;
  const double scale = 1.0 / static_cast<double>(m);
  for (int comp = 0; comp < 2; ++comp) {
    const auto& gx = w.phys_g[comp == 0 ? 0 : 2];
    const auto& gy = w.phys_g[comp == 0 ? 1 : 3];
    for (size_t p = 0; p < m; ++p)
      w.spec[p] = Complex(w.phys_a1[p] * gx[p] + w.phys_a2[p] * gy[p], 0.0);
    fft.forward(w.spec.data());
    const size_t base = static_cast<size_t>(comp) * m;
    for (size_t p = 0; p < m; ++p) out.c[base + p] = scale * w.spec[p];
  }
  apply_radial_mask(out, a.grid.dealias_radius());
  // for divergence-free a the product has zero mean identically; drop the
  // round-off residue so the mean-free convention is exact
  zero_mean(out);
  hermitian_symmetrize(out);
  return out;
}

SpectralField nonlinear_term(const SpectralField& u) {
  require_hermitian(u, "nonlinear_term");
  return leray_project(advect(u, u));
}

double interpolation_gap(const SpectralField& u, double s0, double s1,
                         double s2, double theta) {
  if (theta < 0.0 || theta > 1.0)
    throw std::invalid_argument("interpolation_gap: theta must lie in [0,1]");
  if (std::abs(s1 - ((1.0 - theta) * s0 + theta * s2)) > 1e-12)
    throw std::invalid_argument(
        "interpolation_gap: s1 must equal (1-theta) s0 + theta s2");
  const double n0 = sobolev_norm(u, s0);
  const double n1 = sobolev_norm(u, s1);
  const double n2 = sobolev_norm(u, s2);
  if (n0 == 0.0 || n2 == 0.0)
    throw std::domain_error("interpolation_gap: undefined on the zero field");
  return n1 / (std::pow(n0, 1.0 - theta) * std::pow(n2, theta));
}

double max_pointwise_speed(const SpectralField& u) {
  const int n = u.n();
  Workspace& w = workspace_for(n);
  const Fft& fft = Fft::plan(n);
  to_physical(u, 0, fft, w, w.phys_a1, false, false);
  to_physical(u, 1, fft, w, w.phys_a2, false, false);
  double worst = 0.0;
  for (size_t p = 0; p < w.phys_a1.size(); ++p) {
    const double s2 =
        w.phys_a1[p] * w.phys_a1[p] + w.phys_a2[p] * w.phys_a2[p];
    worst = std::max(worst, s2);
  }
  return std::sqrt(worst);
}

}  // namespace tns
