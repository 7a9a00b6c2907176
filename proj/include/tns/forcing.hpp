#pragma once

#include <cstdint>
#include <string>

#include "tns/field.hpp"

namespace tns {

// stable 64-bit mixing for seed derivation (splitmix64 finalizer)
uint64_t mix64(uint64_t x);
uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b = 0);

enum class ForceProfile { zero, power_tail, critical_log };

ForceProfile force_profile_from_string(const std::string& s);
std::string to_string(ForceProfile p);

// Recipe for a divergence-free, mean-free force with prescribed regularity.
//
//   power_tail:   |f_hat(k)| = amplitude * |k|^{-sigma}, sigma = alpha+1+delta,
//                 so ||f||_{H^alpha} converges under refinement while
//                 ||f||_{H^{alpha'}} diverges for alpha' >= alpha + delta.
//   critical_log: |f_hat(k)| = amplitude / log(e + |k|); lies in H^{-1} but in
//                 no H^{-1+eps}.
//
// Phases are a pure function of (seed, k), so the field at resolution N is
// exactly the spectral truncation of the field at any finer resolution.
struct ForceSpec {
  double alpha = -1.0;               // target regularity class, in [-1, 0]
  ForceProfile profile = ForceProfile::critical_log;
  double delta = 0.25;               // power_tail: sigma = alpha + 1 + delta
  double amplitude = 1.0;
  uint64_t seed = 0;
  int n = 0;                         // resolution the field is sampled at

  double sigma() const { return alpha + 1.0 + delta; }
  void validate() const;
};

SpectralField synthesize_force(const ForceSpec& spec, const GridSpec& grid);

// random divergence-free field with |u_hat(k)| = |k|^{-sigma} and hashed
// phases; same truncation-compatibility guarantee as synthesize_force
SpectralField random_divergence_free_field(const GridSpec& grid, double sigma,
                                           uint64_t seed);

// random data of prescribed Sobolev class s (spectral slope s + 1 + delta)
SpectralField random_sobolev_field(const GridSpec& grid, double s, double delta,
                                   double amplitude, uint64_t seed);

// u = (sin x cos y, -cos x sin y); B(u,u) is a pure gradient, and under zero
// force the solution is u0 * exp(-2 nu t)
SpectralField taylor_green(const GridSpec& grid, double amplitude = 1.0);

}  // namespace tns
