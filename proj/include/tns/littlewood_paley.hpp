#pragma once

#include <filesystem>
#include <vector>

#include "tns/field.hpp"

namespace tns {

// Smooth radial cutoff: 1 on [0, 1/2], 0 on [1, inf), and the C-infinity
// transition g(2-2r) / (g(2-2r) + g(2r-1)) with g(x) = exp(-1/x) on (1/2, 1).
// Nonincreasing, values in [0, 1].
double bump_chi(double r);

// dyadic shell frequency lambda_q = 2^q (q >= -1)
double shell_lambda(int q);

// shell multiplier: chi(|xi|/2^{q+1}) - chi(|xi|/2^q) for q >= 0, chi(|xi|)
// for q = -1; the family telescopes to chi(2^{-(Q+1)} |xi|)
double phi_q(int q, double xi_norm);

// smallest Q with every grid mode inside the telescoped cutoff
int max_shell(const GridSpec& grid);

// per-mode shell weights; each mode meets at most two consecutive shells
struct ShellWeightTable {
  int n = 0;
  int q_max = 0;
  // for mode index m: shells q (q + 1 as array offset) with weight phi_q(k)
  std::vector<int> first_q;                 // lowest shell touching the mode
  std::vector<double> w0, w1;               // weights for first_q, first_q + 1
  static const ShellWeightTable& for_grid(const GridSpec& grid);
};

// multiplies each mode by phi_q(k)
SpectralField lp_project(const SpectralField& u, int q);

// L2 energies ||u_q||_2 for q = -1 .. max_shell, indexed by q + 1
std::vector<double> shell_energies(const SpectralField& u);

// (Sum_q lambda_q^{2s} ||u_q||_2^2)^{1/2}
double lp_norm(const SpectralField& u, double s);
double lp_norm_from_shells(const std::vector<double>& energies, double s);

// ||u_q||_{L^{p_to}} / (lambda_q^{2(1/p_from - 1/p_to)} ||u_q||_{L^{p_from}})
// for a field supported in shell q; empirical Bernstein constant probe.
// p_to = INFINITY selects the sup norm.  Throws on the zero field.
double bernstein_ratio(const SpectralField& u_q, int q, double p_from,
                       double p_to);

// L^p norm under the normalized measure dx/(2pi)^2 (p >= 1 or INFINITY)
double lp_physical_norm(const SpectralField& u, double p);

struct ShellDecomposition {
  int q_min = -1;
  std::vector<SpectralField> shells;  // indexed by q - q_min
  static ShellDecomposition decompose(const SpectralField& u);
  const SpectralField& shell(int q) const { return shells.at(q - q_min); }
  int q_max() const { return q_min + static_cast<int>(shells.size()) - 1; }
  double lambda(int q) const { return shell_lambda(q); }
};

// CSV rows (q, lambda_q, ||u_q||_2)
void write_shell_energy_csv(const SpectralField& u,
                            const std::filesystem::path& path);

}  // namespace tns
