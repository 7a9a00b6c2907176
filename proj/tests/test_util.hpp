#pragma once

#include <cmath>

#include "tns/field.hpp"
#include "tns/forcing.hpp"

namespace tns::test {

// single conjugate-pair field with L2 norm = |amp|, polarization e
inline SpectralField unit_mode(const GridSpec& grid, int kx, int ky,
                               Complex ex, Complex ey, double amp = 1.0) {
  SpectralField u(grid);
  const double norm = std::sqrt(std::norm(ex) + std::norm(ey));
  add_conjugate_pair(u, kx, ky, amp * ex / norm, amp * ey / norm);
  return u;
}

// divergence-free single pair (polarized along k-perp)
inline SpectralField unit_divfree_mode(const GridSpec& grid, int kx, int ky,
                                       double amp = 1.0,
                                       double phase = 0.0) {
  SpectralField u(grid);
  const double kn = std::hypot(double(kx), double(ky));
  const Complex c = amp * Complex(std::cos(phase), std::sin(phase));
  add_conjugate_pair(u, kx, ky, -ky / kn * c, kx / kn * c);
  return u;
}

}  // namespace tns::test
