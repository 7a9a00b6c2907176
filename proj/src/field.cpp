#include "tns/field.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tns {

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(*this, o, "operator+=");
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
  mean_free = mean_free && o.mean_free;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(*this, o, "operator-=");
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
  mean_free = mean_free && o.mean_free;
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& v : c) v *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

void add_conjugate_pair(SpectralField& u, int kx, int ky, Complex amp_x,
                        Complex amp_y) {
  if (kx == 0 && ky == 0)
    throw std::invalid_argument("add_conjugate_pair: zero mode has no partner");
  const int half = u.n() / 2;
  if (std::abs(kx) >= half || std::abs(ky) >= half)
    throw std::invalid_argument("add_conjugate_pair: mode outside grid interior");
  const double r = 1.0 / std::sqrt(2.0);
  u.at(0, kx, ky) += r * amp_x;
  u.at(1, kx, ky) += r * amp_y;
  u.at(0, -kx, -ky) += r * std::conj(amp_x);
  u.at(1, -kx, -ky) += r * std::conj(amp_y);
}

void hermitian_symmetrize(SpectralField& u) {
  const int n = u.n();
  for (int comp = 0; comp < 2; ++comp) {
    for (int i = 0; i < n; ++i) {
      const int im = (n - i) % n;
      for (int j = 0; j < n; ++j) {
        const int jm = (n - j) % n;
        if (i == n / 2 || j == n / 2) {
          u.c[u.idx(comp, i, j)] = Complex(0.0, 0.0);
          continue;
        }
        if (i > im || (i == im && j > jm)) continue;  // visit each pair once
        const size_t a = u.idx(comp, i, j);
        const size_t b = u.idx(comp, im, jm);
        if (a == b) {
          u.c[a] = Complex(u.c[a].real(), 0.0);
        } else {
          const Complex avg = 0.5 * (u.c[a] + std::conj(u.c[b]));
          u.c[a] = avg;
          u.c[b] = std::conj(avg);
        }
      }
    }
  }
  if (u.mean_free) {
    u.c[u.idx(0, 0, 0)] = Complex(0.0, 0.0);
    u.c[u.idx(1, 0, 0)] = Complex(0.0, 0.0);
  }
}

bool is_hermitian(const SpectralField& u, double rel_tol) {
  const int n = u.n();
  const double tol = rel_tol * std::max(1e-300, max_abs_coeff(u));
  for (int comp = 0; comp < 2; ++comp)
    for (int i = 0; i < n; ++i) {
      const int im = (n - i) % n;
      for (int j = 0; j < n; ++j) {
        const int jm = (n - j) % n;
        const Complex a = u.c[u.idx(comp, i, j)];
        if (i == n / 2 || j == n / 2) {
          if (std::abs(a) > tol) return false;
          continue;
        }
        const Complex b = u.c[u.idx(comp, im, jm)];
        if (std::abs(a - std::conj(b)) > tol) return false;
      }
    }
  return true;
}

double max_divergence(const SpectralField& u) {
  const int n = u.n();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double kx = u.grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = u.grid.wavenumber(j);
      const Complex d = kx * u.c[u.idx(0, i, j)] + ky * u.c[u.idx(1, i, j)];
      worst = std::max(worst, std::abs(d));
    }
  }
  return worst;
}

bool is_divergence_free(const SpectralField& u, double rel_tol) {
  const double scale = std::max(1e-300, max_abs_coeff(u)) * u.n();
  return max_divergence(u) <= rel_tol * scale;
}

double max_abs_coeff(const SpectralField& u) {
  double m = 0.0;
  for (const auto& v : u.c) m = std::max(m, std::abs(v));
  return m;
}

void zero_mean(SpectralField& u) {
  u.c[u.idx(0, 0, 0)] = Complex(0.0, 0.0);
  u.c[u.idx(1, 0, 0)] = Complex(0.0, 0.0);
  u.mean_free = true;
}

void require_hermitian(const SpectralField& u, const char* where) {
  if (!is_hermitian(u))
    throw std::invalid_argument(std::string(where) +
                                ": input field is not Hermitian-symmetric");
}

void require_same_grid(const SpectralField& a, const SpectralField& b,
                       const char* where) {
  if (!(a.grid == b.grid))
    throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

void apply_radial_mask(SpectralField& u, double radius) {
  const int n = u.n();
  const double r2 = radius * radius;
  for (int comp = 0; comp < 2; ++comp)
    for (int i = 0; i < n; ++i) {
      const int kx = u.grid.wavenumber(i);
      for (int j = 0; j < n; ++j) {
        const int ky = u.grid.wavenumber(j);
        if (double(kx) * kx + double(ky) * ky > r2 || i == n / 2 || j == n / 2)
          u.c[u.idx(comp, i, j)] = Complex(0.0, 0.0);
      }
    }
}

SpectralField masked(const SpectralField& u) {
  SpectralField v = u;
  apply_radial_mask(v, u.grid.dealias_radius());
  return v;
}

SpectralField restrict_to(const SpectralField& u, const GridSpec& target) {
  if (target.n > u.n())
    throw std::invalid_argument("restrict_to: target grid is finer than source");
  SpectralField v(target);
  v.mean_free = u.mean_free;
  const int half = target.n / 2;
  for (int comp = 0; comp < 2; ++comp)
    for (int kx = -half + 1; kx < half; ++kx)
      for (int ky = -half + 1; ky < half; ++ky)
        v.at(comp, kx, ky) = u.at(comp, kx, ky);
  return v;
}

namespace {

// shortest round-trip decimal for doubles; keeps CSV artifacts byte-stable
std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, const char* where) {
  double x = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::runtime_error(std::string(where) + ": malformed number '" +
                             std::string(s) + "'");
  return x;
}

}  // namespace

void write_spectral_csv(const SpectralField& u, const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("write_spectral_csv: cannot open " + p.string());
  out << "k_x,k_y,re_u1,im_u1,re_u2,im_u2\n";
  const int n = u.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex a = u.c[u.idx(0, i, j)];
      const Complex b = u.c[u.idx(1, i, j)];
      out << u.grid.wavenumber(i) << ',' << u.grid.wavenumber(j) << ','
          << format_double(a.real()) << ',' << format_double(a.imag()) << ','
          << format_double(b.real()) << ',' << format_double(b.imag()) << '\n';
    }
}

SpectralField read_spectral_csv(const std::filesystem::path& p,
                                const GridSpec& grid) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("read_spectral_csv: cannot open " + p.string());
  std::string line;
  if (!std::getline(in, line) || line != "k_x,k_y,re_u1,im_u1,re_u2,im_u2")
    throw std::runtime_error("read_spectral_csv: bad header in " + p.string());
  SpectralField u(grid);
  size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<std::string_view, 6> f;
    std::string_view sv(line);
    for (int t = 0; t < 6; ++t) {
      const size_t pos = t < 5 ? sv.find(',') : sv.size();
      if (pos == std::string_view::npos)
        throw std::runtime_error("read_spectral_csv: short row in " + p.string());
      f[t] = sv.substr(0, pos);
      sv = t < 5 ? sv.substr(pos + 1) : std::string_view();
    }
    const int kx = static_cast<int>(parse_double(f[0], "read_spectral_csv"));
    const int ky = static_cast<int>(parse_double(f[1], "read_spectral_csv"));
    u.at(0, kx, ky) = Complex(parse_double(f[2], "read_spectral_csv"),
                              parse_double(f[3], "read_spectral_csv"));
    u.at(1, kx, ky) = Complex(parse_double(f[4], "read_spectral_csv"),
                              parse_double(f[5], "read_spectral_csv"));
    ++rows;
  }
  if (rows != static_cast<size_t>(grid.modes()))
    throw std::runtime_error("read_spectral_csv: row count mismatch in " +
                             p.string());
  u.mean_free = std::abs(u.at(0, 0, 0)) == 0.0 && std::abs(u.at(1, 0, 0)) == 0.0;
  return u;
}

}  // namespace tns
