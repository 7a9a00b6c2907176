#include "tns/paraproduct.hpp"

#include <cmath>
#include <stdexcept>

#include "tns/fft.hpp"
#include "tns/forcing.hpp"
#include "tns/littlewood_paley.hpp"
#include "tns/spectral_ops.hpp"

namespace tns {

namespace {

// trilinear quadrature on fields already truncated to the dealias radius
double raw_trilinear(const SpectralField& u, const SpectralField& w,
                     const SpectralField& v) {
  const int n = u.n();
  const Fft& fft = Fft::plan(n);
  Workspace& ws = workspace_for(n);
  const size_t m = static_cast<size_t>(n) * n;

  auto to_phys = [&](const SpectralField& f, int comp, bool gx, bool gy,
                     std::vector<double>& out) {
    out.resize(m);
    for (int i = 0; i < n; ++i) {
      const double kx = f.grid.wavenumber(i);
      for (int j = 0; j < n; ++j) {
        const double ky = f.grid.wavenumber(j);
        const Complex c = f.c[f.idx(comp, i, j)];
        if (gx || gy) {
          const double k = gx ? kx : ky;
          ws.spec[size_t(i) * n + j] = Complex(-k * c.imag(), k * c.real());
        } else {
          ws.spec[size_t(i) * n + j] = c;
        }
      }
    }
    fft.backward(ws.spec.data());
    for (size_t p = 0; p < m; ++p) out[p] = ws.spec[p].real();
  };

  std::vector<double> u1, u2, w1x, w1y, w2x, w2y, v1, v2;
  to_phys(u, 0, false, false, u1);
  to_phys(u, 1, false, false, u2);
  to_phys(w, 0, true, false, w1x);
  to_phys(w, 0, false, true, w1y);
  to_phys(w, 1, true, false, w2x);
  to_phys(w, 1, false, true, w2y);
  to_phys(v, 0, false, false, v1);
  to_phys(v, 1, false, false, v2);

  double sum = 0.0;
  for (size_t p = 0; p < m; ++p)
    sum += (u1[p] * w1x[p] + u2[p] * w1y[p]) * v1[p] +
           (u1[p] * w2x[p] + u2[p] * w2y[p]) * v2[p];
  return sum / static_cast<double>(m);
}

void check_trilinear_inputs(const SpectralField& u, const SpectralField& w,
                            const SpectralField& v) {
  require_same_grid(u, w, "trilinear_form");
  require_same_grid(u, v, "trilinear_form");
  if (u.grid.n * u.grid.dealias_fraction < 4.0)
    throw std::invalid_argument(
        "trilinear_form: resolution too small for requested dealiasing");
  require_hermitian(u, "trilinear_form");
  require_hermitian(w, "trilinear_form");
  require_hermitian(v, "trilinear_form");
  if (!is_divergence_free(u))
    throw std::invalid_argument("trilinear_form: u must be divergence-free");
}

}  // namespace

double trilinear_form(const SpectralField& u, const SpectralField& w,
                      const SpectralField& v) {
  check_trilinear_inputs(u, w, v);
  return raw_trilinear(masked(u), masked(w), masked(v));
}

TriClass classify_triple(int p, int q, int r) {
  if (std::abs(p - q) <= 2 && r <= std::min(p, q) + 1) return TriClass::I;
  if (std::abs(p - r) <= 2 && q <= std::min(p, r) - 2) return TriClass::II;
  return TriClass::III;
}

TrisectionResult bony_trisect(const SpectralField& u, const SpectralField& w,
                              const SpectralField& v) {
  check_trilinear_inputs(u, w, v);
  const SpectralField um = masked(u);
  const SpectralField wm = masked(w);
  const SpectralField vm = masked(v);
  const int q_max = max_shell(u.grid);
  const int q_min = -1;

  const ShellDecomposition du = ShellDecomposition::decompose(um);
  const ShellDecomposition dw = ShellDecomposition::decompose(wm);
  const ShellDecomposition dv = ShellDecomposition::decompose(vm);

  auto nonzero = [](const SpectralField& f) { return max_abs_coeff(f) != 0.0; };
  std::vector<bool> u_live(q_max + 2), w_live(q_max + 2), v_live(q_max + 2);
  for (int q = q_min; q <= q_max; ++q) {
    u_live[q + 1] = nonzero(du.shell(q));
    w_live[q + 1] = nonzero(dw.shell(q));
    v_live[q + 1] = nonzero(dv.shell(q));
  }

  // prefix sums over v-shells for the class-I inner sum
  std::vector<SpectralField> v_prefix(q_max + 2, SpectralField(u.grid));
  {
    SpectralField acc(u.grid);
    for (int r = q_min; r <= q_max; ++r) {
      acc += dv.shell(r);
      v_prefix[r + 1] = acc;
    }
  }

  TrisectionResult res;
  res.total_direct = raw_trilinear(um, wm, vm);

  // I: pairs (p, q) with |p - q| <= 2 against the v-prefix r <= min(p,q)+1
  for (int p = q_min; p <= q_max; ++p) {
    if (!u_live[p + 1]) continue;
    for (int q = std::max(q_min, p - 2); q <= std::min(q_max, p + 2); ++q) {
      if (!w_live[q + 1]) continue;
      const int r_hi = std::min(q_max, std::min(p, q) + 1);
      if (r_hi < q_min) continue;
      res.term_I += raw_trilinear(du.shell(p), dw.shell(q), v_prefix[r_hi + 1]);
    }
  }

  // II: pairs (p, r) with |p - r| <= 2 against the w-prefix q <= min(p,r)-2
  for (int p = q_min; p <= q_max; ++p) {
    if (!u_live[p + 1]) continue;
    for (int r = std::max(q_min, p - 2); r <= std::min(q_max, p + 2); ++r) {
      if (!v_live[r + 1]) continue;
      const int s_hi = std::min(q_max, std::min(p, r) - 2);
      if (s_hi < q_min) continue;
      SpectralField w_sum(u.grid);
      bool any = false;
      for (int s = q_min; s <= s_hi; ++s) {
        if (!w_live[s + 1]) continue;
        w_sum += dw.shell(s);
        any = true;
      }
      if (!any) continue;
      res.term_II += raw_trilinear(du.shell(p), w_sum, dv.shell(r));
    }
  }

  // III: remainder; for each (q, r) gather the leftover u-shells
  for (int q = q_min; q <= q_max; ++q) {
    if (!w_live[q + 1]) continue;
    for (int r = q_min; r <= q_max; ++r) {
      if (!v_live[r + 1]) continue;
      SpectralField u_sum(u.grid);
      bool any = false;
      for (int p = q_min; p <= q_max; ++p) {
        if (!u_live[p + 1]) continue;
        if (classify_triple(p, q, r) != TriClass::III) continue;
        u_sum += du.shell(p);
        any = true;
      }
      if (!any) continue;
      res.term_III += raw_trilinear(u_sum, dw.shell(q), dv.shell(r));
    }
  }

  return res;
}

double b_negative_norm(const SpectralField& u, double beta) {
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("b_negative_norm: beta must lie in (0, 1]");
  return sobolev_norm(nonlinear_term(u), -beta);
}

EstimateEnsembleReport lemma_constant_estimate(double beta, int ensemble_size,
                                               const std::vector<int>& resolutions,
                                               uint64_t seed, double nu) {
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("lemma_constant_estimate: beta in (0, 1]");
  if (ensemble_size <= 0 || resolutions.empty())
    throw std::invalid_argument("lemma_constant_estimate: empty ensemble");

  EstimateEnsembleReport rep;
  rep.beta = beta;
  double sum = 0.0;
  int count = 0;
  for (int n : resolutions) {
    const GridSpec grid(n, nu);
    EstimateEnsembleReport::PerResolution pr;
    double res_sum = 0.0;
    for (int s = 0; s < ensemble_size; ++s) {
      // alternate rough and smooth spectral slopes across the ensemble
      const double sigma = (s % 2 == 0) ? 1.0 : 2.0;
      SpectralField u;
      double denom = 0.0;
      for (uint64_t attempt = 0;; ++attempt) {
        u = random_divergence_free_field(grid, sigma,
                                         mix_seed(seed, uint64_t(s), attempt));
        denom = sobolev_norm(u, 1.0 - beta) * sobolev_norm(u, 1.0);
        if (denom > 1e-12) break;  // degenerate draw: resample
      }
      const double ratio = b_negative_norm(u, beta) / denom;
      rep.ratios.push_back(ratio);
      pr.max_ratio = std::max(pr.max_ratio, ratio);
      res_sum += ratio;
      sum += ratio;
      ++count;
    }
    pr.mean_ratio = res_sum / ensemble_size;
    rep.by_resolution[n] = pr;
    rep.max_ratio = std::max(rep.max_ratio, pr.max_ratio);
  }
  rep.samples = count;
  rep.mean_ratio = sum / count;
  return rep;
}

}  // namespace tns
