#include "tns/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>

#include "tns/fft.hpp"
#include "tns/spectral_ops.hpp"

namespace tns {

namespace {
double smooth_g(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
}

double bump_chi(double r) {
  if (r <= 0.5) return 1.0;
  if (r >= 1.0) return 0.0;
  const double a = smooth_g(2.0 - 2.0 * r);
  const double b = smooth_g(2.0 * r - 1.0);
  return a / (a + b);
}

double shell_lambda(int q) { return std::ldexp(1.0, q); }

double phi_q(int q, double xi_norm) {
  if (q < -1) throw std::invalid_argument("phi_q: q must be >= -1");
  if (q == -1) return bump_chi(xi_norm);
  const double lam = shell_lambda(q);
  return bump_chi(xi_norm / (2.0 * lam)) - bump_chi(xi_norm / lam);
}

int max_shell(const GridSpec& grid) {
  return static_cast<int>(std::ceil(std::log2(static_cast<double>(grid.n))));
}

const ShellWeightTable& ShellWeightTable::for_grid(const GridSpec& grid) {
  static std::mutex mutex;
  static std::map<int, ShellWeightTable> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(grid.n);
  if (it != cache.end()) return it->second;

  ShellWeightTable t;
  t.n = grid.n;
  t.q_max = max_shell(grid);
  const size_t m = static_cast<size_t>(grid.n) * grid.n;
  t.first_q.assign(m, 0);
  t.w0.assign(m, 0.0);
  t.w1.assign(m, 0.0);
  for (int i = 0; i < grid.n; ++i) {
    const double kx = grid.wavenumber(i);
    for (int j = 0; j < grid.n; ++j) {
      const double ky = grid.wavenumber(j);
      const double kn = std::hypot(kx, ky);
      // phi_q(k) != 0 only for lambda_{q-1} < |k| < lambda_{q+1}; scan the
      // (at most two) candidates around log2 |k|
      int q_lo = kn < 1.0 ? -1 : std::max(-1, int(std::floor(std::log2(kn))) - 1);
      const size_t idx = static_cast<size_t>(i) * grid.n + j;
      int found = 0;
      for (int q = q_lo; q <= std::min(t.q_max, q_lo + 3) && found < 2; ++q) {
        const double w = phi_q(q, kn);
        if (w == 0.0) continue;
        if (found == 0) {
          t.first_q[idx] = q;
          t.w0[idx] = w;
        } else {
          t.w1[idx] = w;
        }
        ++found;
      }
    }
  }
  return cache.emplace(grid.n, std::move(t)).first->second;
}

SpectralField lp_project(const SpectralField& u, int q) {
  if (q < -1) throw std::invalid_argument("lp_project: q must be >= -1");
  const int n = u.n();
  SpectralField out(u.grid);
  out.mean_free = u.mean_free;
  for (int i = 0; i < n; ++i) {
    const double kx = u.grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = u.grid.wavenumber(j);
      const double w = phi_q(q, std::hypot(kx, ky));
      if (w == 0.0) continue;
      out.c[out.idx(0, i, j)] = w * u.c[u.idx(0, i, j)];
      out.c[out.idx(1, i, j)] = w * u.c[u.idx(1, i, j)];
    }
  }
  return out;
}

std::vector<double> shell_energies(const SpectralField& u) {
  const ShellWeightTable& t = ShellWeightTable::for_grid(u.grid);
  std::vector<double> acc(static_cast<size_t>(t.q_max) + 2, 0.0);
  const size_t m = static_cast<size_t>(u.n()) * u.n();
  for (size_t idx = 0; idx < m; ++idx) {
    const double e = std::norm(u.c[idx]) + std::norm(u.c[m + idx]);
    if (e == 0.0) continue;
    const int q = t.first_q[idx];
    acc[q + 1] += t.w0[idx] * t.w0[idx] * e;
    if (t.w1[idx] != 0.0 && q + 2 < static_cast<int>(acc.size()))
      acc[q + 2] += t.w1[idx] * t.w1[idx] * e;
  }
  for (auto& v : acc) v = std::sqrt(v);
  return acc;
}

double lp_norm_from_shells(const std::vector<double>& energies, double s) {
  double sum = 0.0;
  for (size_t i = 0; i < energies.size(); ++i) {
    const double lam = shell_lambda(static_cast<int>(i) - 1);
    sum += std::pow(lam, 2.0 * s) * energies[i] * energies[i];
  }
  return std::sqrt(sum);
}

double lp_norm(const SpectralField& u, double s) {
  if (s < 0.0) {
    const double mean = std::abs(u.at(0, 0, 0)) + std::abs(u.at(1, 0, 0));
    if (mean != 0.0)
      throw std::invalid_argument("lp_norm: negative order requires mean-free");
  }
  return lp_norm_from_shells(shell_energies(u), s);
}

double lp_physical_norm(const SpectralField& u, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_physical_norm: p must be >= 1");
  const int n = u.n();
  Workspace& w = workspace_for(n);
  std::vector<double>& u1 = w.phys_a1;
  std::vector<double>& u2 = w.phys_a2;
  physical_component(u, 0, u1);
  physical_component(u, 1, u2);
  const size_t m = u1.size();
  if (std::isinf(p)) {
    double worst = 0.0;
    for (size_t i = 0; i < m; ++i)
      worst = std::max(worst, u1[i] * u1[i] + u2[i] * u2[i]);
    return std::sqrt(worst);
  }
  double sum = 0.0;
  for (size_t i = 0; i < m; ++i)
    sum += std::pow(std::sqrt(u1[i] * u1[i] + u2[i] * u2[i]), p);
  return std::pow(sum / static_cast<double>(m), 1.0 / p);
}

double bernstein_ratio(const SpectralField& u_q, int q, double p_from,
                       double p_to) {
  if (p_from < 2.0 || p_to < p_from)
    throw std::invalid_argument("bernstein_ratio: need 2 <= p_from <= p_to");
  const double denom_norm = lp_physical_norm(u_q, p_from);
  if (denom_norm == 0.0)
    throw std::domain_error("bernstein_ratio: zero field");
  const double gain = 2.0 * (1.0 / p_from - (std::isinf(p_to) ? 0.0 : 1.0 / p_to));
  const double lam = shell_lambda(q);
  return lp_physical_norm(u_q, p_to) / (std::pow(lam, gain) * denom_norm);
}

ShellDecomposition ShellDecomposition::decompose(const SpectralField& u) {
  ShellDecomposition d;
  d.q_min = -1;
  const int qm = max_shell(u.grid);
  d.shells.reserve(qm + 2);
  for (int q = -1; q <= qm; ++q) d.shells.push_back(lp_project(u, q));
  return d;
}

void write_shell_energy_csv(const SpectralField& u,
                            const std::filesystem::path& path) {
  const auto energies = shell_energies(u);
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("write_shell_energy_csv: cannot open " +
                             path.string());
  out << "q,lambda_q,l2_energy\n";
  char buf[64];
  for (size_t i = 0; i < energies.size(); ++i) {
    const int q = static_cast<int>(i) - 1;
    const int len =
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", q,
                      shell_lambda(q), energies[i]);
    out.write(buf, len);
  }
}

}  // namespace tns
