#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace tns {

// Uniform N x N Fourier grid on the 2pi-periodic torus.
//
// Coefficient indices i in [0, N) map to integer wavenumbers
// k = i for i <= N/2 and k = i - N otherwise.  The Nyquist line
// (|k_i| = N/2) has no conjugate partner on the grid and is kept
// identically zero so that Hermitian symmetry is an exact involution.
//
// All norms are taken with the normalized measure dx / (2pi)^2, so the
// L2 norm of a field equals the l2 norm of its coefficient array.
struct GridSpec {
  int n = 0;                      // modes per axis, even, >= 8
  double nu = 0.0;                // viscosity
  double dealias_fraction = 2.0 / 3.0;  // retained-radius fraction for products

  GridSpec() = default;
  GridSpec(int n_, double nu_, double dealias = 2.0 / 3.0)
      : n(n_), nu(nu_), dealias_fraction(dealias) {
    if (n < 8 || n % 2 != 0)
      throw std::invalid_argument("GridSpec: n must be even and >= 8, got " +
                                  std::to_string(n));
    if (!(nu > 0.0))
      throw std::invalid_argument("GridSpec: nu must be positive");
    if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
      throw std::invalid_argument("GridSpec: dealias_fraction must lie in (0,1]");
  }

  int modes() const { return n * n; }

  // wavenumber of coefficient index along one axis
  int wavenumber(int idx) const { return idx <= n / 2 ? idx : idx - n; }

  // coefficient index of a wavenumber in [-n/2, n/2]
  int index_of(int k) const { return k >= 0 ? k : k + n; }

  // retained-product radius; modes with |k| above it are zeroed in products
  double dealias_radius() const { return dealias_fraction * (n / 2.0); }

  bool operator==(const GridSpec& o) const {
    return n == o.n && nu == o.nu && dealias_fraction == o.dealias_fraction;
  }
};

}  // namespace tns
