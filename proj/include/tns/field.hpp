#pragma once

#include <complex>
#include <filesystem>
#include <vector>

#include "tns/grid.hpp"

namespace tns {

using Complex = std::complex<double>;

// Two-component vector field on the torus, stored as full N x N complex
// coefficient arrays per component (component-major, then kx index, then ky).
//
// Invariants maintained by every operation in this library:
//   - Hermitian symmetry: u_hat(-k) = conj(u_hat(k)) (field is real-valued),
//   - the Nyquist lines are identically zero,
//   - if mean_free, u_hat(0) = 0.
struct SpectralField {
  GridSpec grid;
  std::vector<Complex> c;  // size 2 * n * n
  bool mean_free = true;

  SpectralField() = default;
  explicit SpectralField(const GridSpec& g)
      : grid(g), c(static_cast<size_t>(2) * g.modes(), Complex(0.0, 0.0)) {}

  int n() const { return grid.n; }

  size_t idx(int comp, int ix, int iy) const {
    return (static_cast<size_t>(comp) * grid.n + ix) * grid.n + iy;
  }

  // access by wavenumber, kx, ky in [-n/2, n/2]
  Complex& at(int comp, int kx, int ky) {
    return c[idx(comp, grid.index_of(kx), grid.index_of(ky))];
  }
  Complex at(int comp, int kx, int ky) const {
    return c[idx(comp, grid.index_of(kx), grid.index_of(ky))];
  }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

// Adds amp * e_pol at wavenumber k together with the conjugate mode at -k,
// scaled so the resulting real field has L2 norm |amp| * |e_pol|.
void add_conjugate_pair(SpectralField& u, int kx, int ky, Complex amp_x,
                        Complex amp_y);

// exact involution k -> -k on index pairs; also zeroes Nyquist lines
void hermitian_symmetrize(SpectralField& u);

bool is_hermitian(const SpectralField& u, double rel_tol = 1e-13);
double max_divergence(const SpectralField& u);  // max_k |k . u_hat(k)|
bool is_divergence_free(const SpectralField& u, double rel_tol = 1e-12);
double max_abs_coeff(const SpectralField& u);
void zero_mean(SpectralField& u);

void require_hermitian(const SpectralField& u, const char* where);
void require_same_grid(const SpectralField& a, const SpectralField& b,
                       const char* where);

// zero every mode with |k| > radius, plus the Nyquist lines
void apply_radial_mask(SpectralField& u, double radius);
SpectralField masked(const SpectralField& u);  // mask at grid.dealias_radius()

// spectral restriction onto a coarser grid (modes shared by both grids)
SpectralField restrict_to(const SpectralField& u, const GridSpec& target);

// flat CSV spectral dump: rows k_x, k_y, Re u1, Im u1, Re u2, Im u2,
// exact round-trip through shortest decimal representation
void write_spectral_csv(const SpectralField& u, const std::filesystem::path& p);
SpectralField read_spectral_csv(const std::filesystem::path& p,
                                const GridSpec& grid);

}  // namespace tns
