#include "tns/forcing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tns {

uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b) {
  return mix64(mix64(mix64(seed) ^ a) ^ b);
}

ForceProfile force_profile_from_string(const std::string& s) {
  if (s == "zero") return ForceProfile::zero;
  if (s == "power_tail") return ForceProfile::power_tail;
  if (s == "critical_log") return ForceProfile::critical_log;
  throw std::invalid_argument("unknown force profile '" + s + "'");
}

std::string to_string(ForceProfile p) {
  switch (p) {
    case ForceProfile::zero: return "zero";
    case ForceProfile::power_tail: return "power_tail";
    case ForceProfile::critical_log: return "critical_log";
  }
  return "?";
}

void ForceSpec::validate() const {
  if (alpha < -1.0 || alpha > 0.0)
    throw std::invalid_argument("ForceSpec: alpha must lie in [-1, 0]");
  if (profile == ForceProfile::power_tail && !(delta > 0.0))
    throw std::invalid_argument(
        "ForceSpec: power_tail needs delta > 0, otherwise the target norm "
        "||f||_{H^alpha} diverges under refinement (sigma <= alpha + 1)");
}

namespace {

// phase in [0, 2pi) as a pure function of (seed, k); the signed wavenumbers
// are folded into the hash so the value is resolution-independent
double mode_phase(uint64_t seed, int kx, int ky) {
  const uint64_t zx = static_cast<uint64_t>(kx >= 0 ? 2 * int64_t(kx)
                                                    : -2 * int64_t(kx) - 1);
  const uint64_t zy = static_cast<uint64_t>(ky >= 0 ? 2 * int64_t(ky)
                                                    : -2 * int64_t(ky) - 1);
  const uint64_t h = mix_seed(seed, zx, zy);
  return 2.0 * std::numbers::pi * (static_cast<double>(h >> 11) * 0x1.0p-53);
}

// fills a divergence-free field from a radial amplitude profile:
// u_hat(k) = c(k) * k_perp / |k| with c(k) = amp(|k|) e^{i phase}; the
// conjugate mode gets -conj(c) so that Hermitian symmetry is exact.
template <typename AmpFn>
SpectralField synthesize_divfree(const GridSpec& grid, uint64_t seed,
                                 AmpFn amp) {
  SpectralField u(grid);
  const int half = grid.n / 2;
  for (int kx = -half + 1; kx < half; ++kx) {
    for (int ky = -half + 1; ky < half; ++ky) {
      const bool representative = kx > 0 || (kx == 0 && ky > 0);
      if (!representative) continue;
      const double kn = std::hypot(double(kx), double(ky));
      const double a = amp(kn);
      if (a == 0.0) continue;
      const double phase = mode_phase(seed, kx, ky);
      const Complex c = a * Complex(std::cos(phase), std::sin(phase));
      const double px = -ky / kn, py = kx / kn;  // unit k-perp
      u.at(0, kx, ky) = px * c;
      u.at(1, kx, ky) = py * c;
      u.at(0, -kx, -ky) = px * std::conj(c);
      u.at(1, -kx, -ky) = py * std::conj(c);
    }
  }
  u.mean_free = true;
  return u;
}

}  // namespace

SpectralField synthesize_force(const ForceSpec& spec, const GridSpec& grid) {
  spec.validate();
  if (spec.n != 0 && spec.n != grid.n)
    throw std::invalid_argument("synthesize_force: spec resolution " +
                                std::to_string(spec.n) +
                                " does not match grid " +
                                std::to_string(grid.n));
  switch (spec.profile) {
    case ForceProfile::zero:
      return SpectralField(grid);
    case ForceProfile::power_tail: {
      const double sigma = spec.sigma();
      const double amp = spec.amplitude;
      return synthesize_divfree(grid, spec.seed, [=](double kn) {
        return amp * std::pow(kn, -sigma);
      });
    }
    case ForceProfile::critical_log: {
      const double amp = spec.amplitude;
      return synthesize_divfree(grid, spec.seed, [=](double kn) {
        return amp / std::log(std::numbers::e + kn);
      });
    }
  }
  throw std::logic_error("synthesize_force: unreachable");
}

SpectralField random_divergence_free_field(const GridSpec& grid, double sigma,
                                           uint64_t seed) {
  return synthesize_divfree(grid, seed, [=](double kn) {
    return std::pow(kn, -sigma);
  });
}

SpectralField random_sobolev_field(const GridSpec& grid, double s, double delta,
                                   double amplitude, uint64_t seed) {
  const double sigma = s + 1.0 + delta;
  return synthesize_divfree(grid, seed, [=](double kn) {
    return amplitude * std::pow(kn, -sigma);
  });
}

SpectralField taylor_green(const GridSpec& grid, double amplitude) {
  SpectralField u(grid);
  // sin x cos y = sum of (+-1, +-1) modes with coefficients -+ i/4
  const Complex i4(0.0, 0.25 * amplitude);
  u.at(0, 1, 1) = -i4;
  u.at(0, 1, -1) = -i4;
  u.at(0, -1, 1) = i4;
  u.at(0, -1, -1) = i4;
  u.at(1, 1, 1) = i4;
  u.at(1, -1, 1) = i4;
  u.at(1, 1, -1) = -i4;
  u.at(1, -1, -1) = -i4;
  u.mean_free = true;
  return u;
}

}  // namespace tns
