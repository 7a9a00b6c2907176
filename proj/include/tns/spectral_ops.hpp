#pragma once

#include "tns/field.hpp"

namespace tns {

// H^s norm (Sum_{k != 0} |k|^{2s} |u_hat(k)|^2)^{1/2}, homogeneous weights.
// Rejects non-Hermitian input, and s < 0 with a nonzero mean.
double sobolev_norm(const SpectralField& u, double s);

// L2 pairing <u, v> = Sum_k u_hat(k) . conj(v_hat(k)) (real for real fields)
double l2_inner(const SpectralField& u, const SpectralField& v);

// Per-mode orthogonal projection onto divergence-free fields.  The output is
// assembled from the k-perpendicular component, so k . out(k) vanishes to a
// single rounding per mode; the zero mode is annihilated.
SpectralField leray_project(const SpectralField& u);

// Multiplies each mode by |k|^{2a} (Stokes eigenvalues |k|^2 on the torus).
// Rejects a < 0 with a nonzero mean.
SpectralField stokes_power(const SpectralField& u, double a);

// (a . grad) b evaluated pseudospectrally with radial truncation at the
// grid's dealias radius; output is re-symmetrized and truncated.
SpectralField advect(const SpectralField& a, const SpectralField& b);

// B(u,u): dealiased advection followed by Leray projection
SpectralField nonlinear_term(const SpectralField& u);

// ||u||_{H^{s1}} / (||u||_{H^{s0}}^{1-theta} ||u||_{H^{s2}}^{theta}) for
// s1 = (1-theta) s0 + theta s2; log-convexity makes this <= 1.
// Throws std::domain_error on the zero field.
double interpolation_gap(const SpectralField& u, double s0, double s1,
                         double s2, double theta);

// max over grid points of |u(x)| (used for CFL control)
double max_pointwise_speed(const SpectralField& u);

// physical samples of one component (backward transform, real part)
void physical_component(const SpectralField& u, int comp, std::vector<double>& out);

}  // namespace tns
