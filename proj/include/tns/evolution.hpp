#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tns/field.hpp"
#include "tns/report.hpp"

namespace tns {

enum class Scheme { if_rk2, if_rk4 };
Scheme scheme_from_string(const std::string& s);
std::string to_string(Scheme s);

// Time stepping for the projected system u_t + B(u,u) + nu A u = f.
// The viscous term is integrated exactly per mode (integrating factor);
// only -B(u,u) + f is stepped explicitly with RK2 (Heun) or classical RK4.
struct StepperConfig {
  double dt = 1e-3;
  Scheme scheme = Scheme::if_rk4;
  double t_final = 1.0;
  int record_every = 0;       // snapshot stride; 0 keeps only diagnostics
  double cfl_safety = 0.5;    // dt <= cfl_safety * dx / max|u|, each step
  double diag_alpha = -0.5;   // alpha for the H^{alpha+1}, H^{alpha+2} columns
  double energy_tol_per_dt = 1.0;  // energy-inequality fault threshold

  void validate() const;
};

struct SolverFault {
  enum class Kind { none, blow_up, cfl, energy };
  Kind kind = Kind::none;
  double time = 0.0;
  std::string message;
  explicit operator bool() const { return kind != Kind::none; }
};
std::string to_string(SolverFault::Kind k);

// Diagnostics at every step; field snapshots only at the recording stride.
struct Trajectory {
  GridSpec grid;
  double dt = 0.0;
  Scheme scheme = Scheme::if_rk4;
  double diag_alpha = -0.5;
  std::vector<double> t;
  std::vector<double> l2, h1, ha1, ha2, lp_h1;
  std::vector<double> energy_margin;           // rhs - lhs of the L2 balance
  std::vector<std::vector<double>> shells;     // ||u_q||_2, index q + 1
  std::vector<std::pair<double, SpectralField>> snapshots;
  double u0_l2 = 0.0, f_hm1 = 0.0, f_halpha = 0.0;
  SolverFault fault;

  size_t steps() const { return t.size(); }
  int shell_count() const { return shells.empty() ? 0 : int(shells[0].size()); }
};

// Exact per-mode Duhamel solution of u_t - nu Lap u = f at time t:
//   u_hat(k, t) = u0_hat e^{-nu |k|^2 t} + f_hat (1 - e^{-nu |k|^2 t})/(nu |k|^2).
// Rejects a force with nonzero mean (the zero mode would grow linearly).
SpectralField heat_solve(const SpectralField& u0, const SpectralField& f,
                         double nu, double t);

// Checks sup_t of the dissipation-gain norm against the per-shell Duhamel
// envelope summed with weights lambda_q^{2 alpha + 4}.  The envelope uses the
// exact lower edge lambda_{q-1} of each shell's support as its dissipation
// rate, which makes the bound provable along the exact solution.
VerificationReport heat_gain_check(const SpectralField& u0,
                                   const SpectralField& f, double nu,
                                   double alpha,
                                   const std::vector<double>& t_grid);

SpectralField nse_step(const SpectralField& u, const SpectralField& f,
                       const StepperConfig& cfg);

Trajectory nse_solve(const SpectralField& u0, const SpectralField& f,
                     const StepperConfig& cfg);

// diagnostics of the exact heat flow sampled on the cfg time grid
Trajectory heat_trajectory(const SpectralField& u0, const SpectralField& f,
                           const StepperConfig& cfg);

}  // namespace tns
