#include "tns/evolution.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tns/littlewood_paley.hpp"
#include "tns/spectral_ops.hpp"

namespace tns {

Scheme scheme_from_string(const std::string& s) {
  if (s == "IF-RK2") return Scheme::if_rk2;
  if (s == "IF-RK4") return Scheme::if_rk4;
  throw std::invalid_argument("unknown scheme '" + s + "' (IF-RK2 | IF-RK4)");
}

std::string to_string(Scheme s) {
  return s == Scheme::if_rk2 ? "IF-RK2" : "IF-RK4";
}

std::string to_string(SolverFault::Kind k) {
  switch (k) {
    case SolverFault::Kind::none: return "none";
    case SolverFault::Kind::blow_up: return "blow_up";
    case SolverFault::Kind::cfl: return "cfl";
    case SolverFault::Kind::energy: return "energy";
  }
  return "?";
}

void StepperConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("StepperConfig: dt must be > 0");
  if (!(t_final > 0.0))
    throw std::invalid_argument("StepperConfig: t_final must be > 0");
  if (record_every < 0)
    throw std::invalid_argument("StepperConfig: record_every must be >= 0");
}

SpectralField heat_solve(const SpectralField& u0, const SpectralField& f,
                         double nu, double t) {
  require_same_grid(u0, f, "heat_solve");
  require_hermitian(u0, "heat_solve");
  require_hermitian(f, "heat_solve");
  if (t < 0.0) throw std::invalid_argument("heat_solve: t must be >= 0");
  if (std::abs(f.at(0, 0, 0)) != 0.0 || std::abs(f.at(1, 0, 0)) != 0.0)
    throw std::invalid_argument(
        "heat_solve: force must be mean-free (zero mode grows linearly)");
  const int n = u0.n();
  SpectralField u(u0.grid);
  u.mean_free = u0.mean_free;
  for (int i = 0; i < n; ++i) {
    const double kx = u0.grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = u0.grid.wavenumber(j);
      const double k2 = kx * kx + ky * ky;
      for (int comp = 0; comp < 2; ++comp) {
        const size_t idx = u.idx(comp, i, j);
        if (k2 == 0.0) {
          u.c[idx] = u0.c[idx];
          continue;
        }
        const double decay = std::exp(-nu * k2 * t);
        u.c[idx] = u0.c[idx] * decay + f.c[idx] * ((1.0 - decay) / (nu * k2));
      }
    }
  }
  return u;
}

VerificationReport heat_gain_check(const SpectralField& u0,
                                   const SpectralField& f, double nu,
                                   double alpha,
                                   const std::vector<double>& t_grid) {
  VerificationReport rep;
  rep.id = "heat-gain";
  const auto e0 = shell_energies(u0);
  const auto ef = shell_energies(f);
  const double w_exp = 2.0 * alpha + 4.0;

  for (double t : t_grid) {
    const SpectralField u = heat_solve(u0, f, nu, t);
    const auto eu = shell_energies(u);
    double lhs_sq = 0.0, rhs_sq = 0.0;
    for (size_t i = 0; i < eu.size(); ++i) {
      const int q = static_cast<int>(i) - 1;
      const double lam = shell_lambda(q);
      const double floor = shell_lambda(q - 1);  // lower edge of the support
      const double rate = nu * floor * floor;
      const double decay = std::exp(-rate * t);
      const double w = std::pow(lam, w_exp);
      lhs_sq += w * eu[i] * eu[i];
      rhs_sq += w * (e0[i] * e0[i] * decay +
                     ef[i] * ef[i] * (1.0 - decay) /
                         (nu * nu * floor * floor * floor * floor));
    }
    rep.times.push_back(t);
    rep.lhs.push_back(std::sqrt(lhs_sq));
    rep.rhs.push_back(std::sqrt(rhs_sq));
  }
  rep.details["alpha"] = alpha;
  rep.details["nu"] = nu;
  double sup = 0.0;
  for (double v : rep.lhs) sup = std::max(sup, v);
  rep.details["sup_lp_norm"] = sup;
  rep.finalize();
  return rep;
}

namespace {

// shared per-step diagnostics: norms, shell energies, energy-balance margin
class DiagRecorder {
 public:
  DiagRecorder(const GridSpec& grid, const StepperConfig& cfg, size_t n_steps)
      : grid_(grid), cfg_(cfg), n_steps_(n_steps) {
    const int n = grid.n;
    const double a1 = cfg.diag_alpha + 1.0, a2 = cfg.diag_alpha + 2.0;
    w1_.resize(static_cast<size_t>(n) * n);
    w2_.resize(w1_.size());
    for (int i = 0; i < n; ++i) {
      const double kx = grid.wavenumber(i);
      for (int j = 0; j < n; ++j) {
        const double ky = grid.wavenumber(j);
        const double k2 = kx * kx + ky * ky;
        w1_[size_t(i) * n + j] = k2 == 0.0 ? 0.0 : std::pow(k2, a1);
        w2_[size_t(i) * n + j] = k2 == 0.0 ? 0.0 : std::pow(k2, a2);
      }
    }
  }

  void append(Trajectory& traj, const SpectralField& v, double t,
              size_t step_index) {
    const int n = grid_.n;
    const size_t m = static_cast<size_t>(n) * n;
    double l2_sq = 0.0, h1_sq = 0.0, ha1_sq = 0.0, ha2_sq = 0.0;
    for (size_t p = 0; p < m; ++p) {
      const double e = std::norm(v.c[p]) + std::norm(v.c[m + p]);
      if (e == 0.0) continue;
      const int i = static_cast<int>(p / n), j = static_cast<int>(p % n);
      const double kx = grid_.wavenumber(i), ky = grid_.wavenumber(j);
      const double k2 = kx * kx + ky * ky;
      l2_sq += e;
      h1_sq += k2 * e;
      ha1_sq += w1_[p] * e;
      ha2_sq += w2_[p] * e;
    }
    if (step_index > 0)
      h1_integral_ += 0.5 * cfg_.dt * (prev_h1_sq_ + h1_sq);
    prev_h1_sq_ = h1_sq;

    traj.t.push_back(t);
    traj.l2.push_back(std::sqrt(l2_sq));
    traj.h1.push_back(std::sqrt(h1_sq));
    traj.ha1.push_back(std::sqrt(ha1_sq));
    traj.ha2.push_back(std::sqrt(ha2_sq));
    traj.shells.push_back(shell_energies(v));
    traj.lp_h1.push_back(lp_norm_from_shells(traj.shells.back(), 1.0));
    const double budget =
        traj.u0_l2 * traj.u0_l2 + t * traj.f_hm1 * traj.f_hm1 / grid_.nu;
    traj.energy_margin.push_back(budget - (l2_sq + grid_.nu * h1_integral_));
    if (cfg_.record_every > 0 &&
        (step_index % cfg_.record_every == 0 || step_index == n_steps_))
      traj.snapshots.emplace_back(t, v);
  }

 private:
  GridSpec grid_;
  StepperConfig cfg_;
  size_t n_steps_;
  std::vector<double> w1_, w2_;
  double h1_integral_ = 0.0;
  double prev_h1_sq_ = 0.0;
};

Trajectory make_trajectory_shell(const SpectralField& u0,
                                 const SpectralField& f,
                                 const StepperConfig& cfg) {
  Trajectory traj;
  traj.grid = u0.grid;
  traj.dt = cfg.dt;
  traj.scheme = cfg.scheme;
  traj.diag_alpha = cfg.diag_alpha;
  traj.u0_l2 = sobolev_norm(u0, 0.0);
  traj.f_hm1 = sobolev_norm(f, -1.0);
  traj.f_halpha = sobolev_norm(f, cfg.diag_alpha);
  return traj;
}

// Integrating-factor Runge-Kutta on the Duhamel-transformed variable
// v = e^{nu |k|^2 t} u_hat; the stiff term is exact, stages are standard.
class NseStepper {
 public:
  NseStepper(const GridSpec& grid, const SpectralField& f,
             const StepperConfig& cfg)
      : grid_(grid), f_(f), cfg_(cfg) {
    const int n = grid.n;
    half_.resize(static_cast<size_t>(n) * n);
    full_.resize(half_.size());
    for (int i = 0; i < n; ++i) {
      const double kx = grid.wavenumber(i);
      for (int j = 0; j < n; ++j) {
        const double ky = grid.wavenumber(j);
        const double k2 = kx * kx + ky * ky;
        half_[size_t(i) * n + j] = std::exp(-grid.nu * k2 * cfg.dt * 0.5);
        full_[size_t(i) * n + j] = std::exp(-grid.nu * k2 * cfg.dt);
      }
    }
  }

  // stage velocity -B(u,u) + f
  SpectralField rhs(const SpectralField& u) const {
    SpectralField r = nonlinear_term(u);
    r *= -1.0;
    r += f_;
    return r;
  }

  void scale(SpectralField& u, const std::vector<double>& table) const {
    const size_t m = table.size();
    for (size_t p = 0; p < m; ++p) {
      u.c[p] *= table[p];
      u.c[m + p] *= table[p];
    }
  }

  SpectralField step(const SpectralField& u) const {
    const double dt = cfg_.dt;
    if (cfg_.scheme == Scheme::if_rk2) {
      // Heun on the transformed variable
      SpectralField n1 = rhs(u);
      SpectralField pred = u;
      { SpectralField tmp = n1; tmp *= dt; pred += tmp; }
      scale(pred, full_);
      SpectralField n2 = rhs(pred);
      SpectralField out = u;
      { SpectralField tmp = n1; tmp *= dt * 0.5; out += tmp; }
      scale(out, full_);
      n2 *= dt * 0.5;
      out += n2;
      return out;
    }
    // classical RK4 with per-stage integrating factors
    SpectralField n1 = rhs(u);
    SpectralField a = u;
    { SpectralField tmp = n1; tmp *= dt * 0.5; a += tmp; }
    scale(a, half_);
    SpectralField n2 = rhs(a);

    SpectralField b = u;
    scale(b, half_);
    { SpectralField tmp = n2; tmp *= dt * 0.5; b += tmp; }
    SpectralField n3 = rhs(b);

    SpectralField c = u;
    scale(c, full_);
    { SpectralField tmp = n3; scale(tmp, half_); tmp *= dt; c += tmp; }
    SpectralField n4 = rhs(c);

    SpectralField out = u;
    scale(out, full_);
    { SpectralField tmp = n1; scale(tmp, full_); tmp *= dt / 6.0; out += tmp; }
    { SpectralField tmp = n2; scale(tmp, half_); tmp *= dt / 3.0; out += tmp; }
    { SpectralField tmp = n3; scale(tmp, half_); tmp *= dt / 3.0; out += tmp; }
    n4 *= dt / 6.0;
    out += n4;
    return out;
  }

  double cfl_bound(const SpectralField& u) const {
    const double speed = max_pointwise_speed(u);
    if (speed == 0.0) return std::numeric_limits<double>::infinity();
    const double dx = 2.0 * std::numbers::pi / grid_.n;
    return cfg_.cfl_safety * dx / speed;
  }

 private:
  GridSpec grid_;
  SpectralField f_;
  StepperConfig cfg_;
  std::vector<double> half_, full_;
};

void validate_solver_inputs(const SpectralField& u0, const SpectralField& f,
                            const StepperConfig& cfg, const char* where) {
  cfg.validate();
  require_same_grid(u0, f, where);
  require_hermitian(u0, where);
  require_hermitian(f, where);
  if (std::abs(u0.at(0, 0, 0)) + std::abs(u0.at(1, 0, 0)) != 0.0 ||
      std::abs(f.at(0, 0, 0)) + std::abs(f.at(1, 0, 0)) != 0.0)
    throw std::invalid_argument(std::string(where) +
                                ": data and force must be mean-free");
  if (!is_divergence_free(u0) || !is_divergence_free(f))
    throw std::invalid_argument(std::string(where) +
                                ": data and force must be divergence-free");
}

}  // namespace

SpectralField nse_step(const SpectralField& u, const SpectralField& f,
                       const StepperConfig& cfg) {
  validate_solver_inputs(u, f, cfg, "nse_step");
  NseStepper stepper(u.grid, f, cfg);
  if (cfg.dt > stepper.cfl_bound(u))
    throw std::invalid_argument("nse_step: dt violates the CFL bound");
  SpectralField out = stepper.step(u);
  if (!std::isfinite(l2_inner(out, out)))
    throw std::runtime_error("nse_step: blow-up of the discrete system");
  return out;
}

Trajectory nse_solve(const SpectralField& u0, const SpectralField& f,
                     const StepperConfig& cfg) {
  validate_solver_inputs(u0, f, cfg, "nse_solve");
  const GridSpec& grid = u0.grid;
  NseStepper stepper(grid, f, cfg);
  const size_t n_steps = static_cast<size_t>(std::llround(cfg.t_final / cfg.dt));

  Trajectory traj = make_trajectory_shell(u0, f, cfg);
  DiagRecorder rec(grid, cfg, n_steps);

  SpectralField u = u0;
  rec.append(traj, u, 0.0, 0);
  for (size_t step = 1; step <= n_steps; ++step) {
    const double t_new = static_cast<double>(step) * cfg.dt;
    const double bound = stepper.cfl_bound(u);
    if (cfg.dt > bound) {
      traj.fault = {SolverFault::Kind::cfl, t_new,
                    "dt exceeds CFL bound " + std::to_string(bound)};
      break;
    }
    u = stepper.step(u);
    const double check = l2_inner(u, u);
    if (!std::isfinite(check)) {
      traj.fault = {SolverFault::Kind::blow_up, t_new,
                    "non-finite field (discrete blow-up)"};
      break;
    }
    rec.append(traj, u, t_new, step);
    const double scale =
        traj.u0_l2 * traj.u0_l2 + t_new * traj.f_hm1 * traj.f_hm1 / grid.nu;
    const double tol = cfg.energy_tol_per_dt * cfg.dt * std::max(scale, 1e-300);
    if (traj.energy_margin.back() < -tol) {
      traj.fault = {SolverFault::Kind::energy, t_new,
                    "energy inequality violated beyond tolerance"};
      break;
    }
  }
  return traj;
}

Trajectory heat_trajectory(const SpectralField& u0, const SpectralField& f,
                           const StepperConfig& cfg) {
  cfg.validate();
  require_same_grid(u0, f, "heat_trajectory");
  const size_t n_steps = static_cast<size_t>(std::llround(cfg.t_final / cfg.dt));
  Trajectory traj = make_trajectory_shell(u0, f, cfg);
  DiagRecorder rec(u0.grid, cfg, n_steps);
  for (size_t step = 0; step <= n_steps; ++step) {
    const double t = static_cast<double>(step) * cfg.dt;
    const SpectralField u = heat_solve(u0, f, u0.grid.nu, t);
    rec.append(traj, u, t, step);
  }
  return traj;
}

}  // namespace tns
