#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tns/field.hpp"

namespace tns {

// Integral of (u . grad w) . v under the normalized measure, evaluated by
// dealiased pseudospectral quadrature.  u must be divergence-free (the
// skew-symmetry identity relies on it); means of w and v are irrelevant
// because the gradient and the pairing against a mean-free product kill them.
double trilinear_form(const SpectralField& u, const SpectralField& w,
                      const SpectralField& v);

// The three signed partial sums of the trilinear form over the disjoint
// frequency-index classes
//   I:   |p - q| <= 2 and r <= min(p, q) + 1,
//   II:  |p - r| <= 2 and q <= min(p, r) - 2,
//   III: the remainder,
// where p, q, r index the shells of u, w, v.  The classes partition every
// triple exactly once, so I + II + III reconstructs the direct integral.
struct TrisectionResult {
  double term_I = 0.0;
  double term_II = 0.0;
  double term_III = 0.0;
  double total_direct = 0.0;
  double reconstruction_error() const {
    return std::abs(term_I + term_II + term_III - total_direct);
  }
};

enum class TriClass { I, II, III };
TriClass classify_triple(int p, int q, int r);

TrisectionResult bony_trisect(const SpectralField& u, const SpectralField& w,
                              const SpectralField& v);

// ||B(u,u)||_{H^{-beta}} for beta in (0, 1]
double b_negative_norm(const SpectralField& u, double beta);

// Ensemble statistics for the ratio
//   ||B(u,u)||_{H^{-beta}} / (||u||_{H^{1-beta}} ||u||_{H^1})
// over random divergence-free fields with power-law spectra.
struct EstimateEnsembleReport {
  double beta = 0.0;
  int samples = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  struct PerResolution {
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
  };
  std::map<int, PerResolution> by_resolution;
  std::vector<double> ratios;  // all samples, resolution-major
};

EstimateEnsembleReport lemma_constant_estimate(double beta, int ensemble_size,
                                               const std::vector<int>& resolutions,
                                               uint64_t seed,
                                               double nu = 1.0);

}  // namespace tns
