#include "tns/orchestrate.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "tns/artifacts.hpp"
#include "tns/config.hpp"
#include "tns/harness.hpp"
#include "tns/littlewood_paley.hpp"
#include "tns/paraproduct.hpp"
#include "tns/report.hpp"
#include "tns/spectral_ops.hpp"

namespace tns {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("JSON parse error in " + path.string() + ": " +
                                e.what());
  }
  return j;
}

int run_simulate(const RunConfig& cfg) {
  const fs::path dir = resolve_output_dir(cfg);
  fs::create_directories(dir);
  write_config(cfg, dir / "config.json");

  const GridSpec grid = cfg.grid();
  if (cfg.experiment == "complex_ray") {
    const SpectralField u0 = cfg.make_initial(grid);
    const SpectralField f = cfg.make_force(grid);
    const ComplexTrajectory ray =
        complex_ray_solve(u0, f, cfg.theta, cfg.s_max, cfg.galerkin_n,
                          cfg.stepper);
    write_ray_csv(ray, dir / "ray.csv");
    write_run_metadata(cfg, dir, nullptr, &ray);
    std::cout << "simulate: ray theta=" << ray.theta << " steps=" << ray.s.size()
              << (ray.blowup_s ? " (blow-up reported)" : "") << " -> "
              << dir.string() << "\n";
    return 0;
  }

  const SpectralField u0 = cfg.make_initial(grid);
  const SpectralField f = cfg.make_force(grid);
  const Trajectory traj = cfg.experiment == "heat"
                              ? heat_trajectory(u0, f, cfg.stepper)
                              : nse_solve(u0, f, cfg.stepper);
  write_trajectory_csv(traj, dir / "trajectory.csv");
  if (cfg.stepper.record_every > 0) {
    fs::create_directories(dir / "snapshots");
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
      char name[64];
      std::snprintf(name, sizeof(name), "snapshot_%05zu.csv", i);
      write_spectral_csv(traj.snapshots[i].second, dir / "snapshots" / name);
    }
  }
  write_run_metadata(cfg, dir, &traj, nullptr);
  std::cout << "simulate: " << cfg.experiment << " steps=" << traj.t.size()
            << " -> " << dir.string() << "\n";
  if (traj.fault) {
    std::cerr << "simulate: solver fault (" << to_string(traj.fault.kind)
              << ") at t=" << traj.fault.time << ": " << traj.fault.message
              << "; partial artifacts flushed\n";
    return 1;
  }
  return 0;
}

fs::path suite_output_dir(const json& j) {
  fs::path dir = j.value("output_dir", std::string("out/verify"));
  if (const char* root = std::getenv("TNS_OUTPUT_ROOT"))
    dir = fs::path(root) / dir;
  fs::create_directories(dir);
  return dir;
}

std::vector<RunArtifacts> load_runs(const json& j, const std::string& key,
                                    bool allow_mismatch) {
  if (!j.contains(key))
    throw std::invalid_argument(
        "verify config: missing '" + key +
        "' (list of run directories produced by `simulate`)");
  std::vector<RunArtifacts> runs;
  for (const auto& d : j.at(key))
    runs.push_back(load_run(d.get<std::string>(), allow_mismatch));
  return runs;
}

int finish_suite(std::vector<VerificationReport>& reports, const fs::path& dir,
                 const std::string& suite) {
  bool all_pass = true;
  for (size_t i = 0; i < reports.size(); ++i) {
    auto& rep = reports[i];
    const fs::path p =
        dir / ("report_" + suite + "_" + std::to_string(i) + "_" + rep.id +
               ".json");
    rep.write_json(p);
    std::cout << (rep.pass ? "[PASS] " : "[FAIL] ") << suite << ": " << rep.id
              << " min_margin=" << rep.min_margin << "\n";
    all_pass = all_pass && rep.pass;
  }
  return all_pass ? 0 : 1;
}

int verify_energy(const json& j, bool allow_mismatch) {
  const auto runs = load_runs(j, "runs", allow_mismatch);
  const double tol_per_dt = j.value("tol_per_dt", 1.0);
  std::vector<VerificationReport> reports;
  for (const auto& run : runs) {
    VerificationReport rep = energy_check(run.trajectory, tol_per_dt);
    rep.config_hash = run.config_hash;
    reports.push_back(std::move(rep));
  }
  return finish_suite(reports, suite_output_dir(j), "energy");
}

int verify_lemma(const json& j, const fs::path& config_dir) {
  (void)config_dir;
  const auto betas = j.value("beta", std::vector<double>{0.25, 0.5, 0.75, 1.0});
  const int ensemble = j.value("ensemble_size", 50);
  const auto resolutions = j.value("resolutions", std::vector<int>{32, 64});
  const uint64_t seed = j.value("seed", uint64_t(1));
  const double growth_cap = j.value("growth_cap", 1.5);
  const fs::path dir = suite_output_dir(j);

  std::ofstream csv(dir / "lemma_samples.csv");
  csv << "beta,n,sample,ratio\n";
  std::vector<VerificationReport> reports;
  for (double beta : betas) {
    const auto est = lemma_constant_estimate(beta, ensemble, resolutions, seed);
    size_t idx = 0;
    for (int n : resolutions)
      for (int s = 0; s < ensemble; ++s)
        csv << fmt(beta) << ',' << n << ',' << s << ','
            << fmt(est.ratios[idx++]) << '\n';
    VerificationReport rep;
    rep.id = "lemma-beta-" + fmt(beta);
    const double lo = est.by_resolution.at(resolutions.front()).max_ratio;
    const double hi = est.by_resolution.at(resolutions.back()).max_ratio;
    rep.times = {0.0};
    rep.lhs = {hi};
    rep.rhs = {growth_cap * lo};
    rep.fitted_constants["max_ratio"] = est.max_ratio;
    rep.details["mean_ratio"] = est.mean_ratio;
    rep.details["samples"] = est.samples;
    rep.finalize();
    reports.push_back(std::move(rep));
  }
  return finish_suite(reports, dir, "lemma");
}

int verify_gronwall(const json& j, bool allow_mismatch) {
  const RunArtifacts train = load_run(
      j.at("train").get<std::string>(), allow_mismatch);
  const auto holdouts = load_runs(j, "runs", allow_mismatch);
  const double t = j.value("t", train.trajectory.t.back());
  const double eps = j.value("eps", 0.5);
  const double nu = train.config.nu;
  const double c_floor = j.value("c_floor", 0.0);

  const GoodTime gt = good_time_select(train.trajectory, t, eps, nu);
  const double c_fit = std::max(
      c_floor,
      fit_gronwall_constant(train.trajectory, train.trajectory.f_halpha, nu,
                            gt.t0));
  std::vector<VerificationReport> reports;
  {
    VerificationReport rep = gronwall_chain_check(
        train.trajectory, train.trajectory.f_halpha, nu, gt.t0, c_fit);
    rep.id += "-train";
    rep.details["good_time_ok"] = gt.bound_ok ? 1.0 : 0.0;
    rep.details["t0"] = gt.t0;
    rep.config_hash = train.config_hash;
    rep.finalize();
    reports.push_back(std::move(rep));
  }
  for (const auto& run : holdouts) {
    const GoodTime g = good_time_select(run.trajectory, t, eps, run.config.nu);
    VerificationReport rep = gronwall_chain_check(
        run.trajectory, run.trajectory.f_halpha, run.config.nu, g.t0, c_fit);
    rep.details["good_time_ok"] = g.bound_ok ? 1.0 : 0.0;
    rep.config_hash = run.config_hash;
    rep.finalize();
    reports.push_back(std::move(rep));
  }
  return finish_suite(reports, suite_output_dir(j), "gronwall");
}

int verify_shell_duhamel(const json& j, bool allow_mismatch) {
  const RunArtifacts train = load_run(
      j.at("train").get<std::string>(), allow_mismatch);
  const auto holdouts = load_runs(j, "runs", allow_mismatch);
  const double p = j.value("p", 0.25);
  std::vector<int> qs = j.value("qs", std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
  const double nu = train.config.nu;

  const SpectralField f_train = train.config.make_force(train.config.grid());
  const double c_fit =
      fit_shell_duhamel_constant(train.trajectory, f_train, qs, p, nu);
  std::vector<VerificationReport> reports;
  for (const auto& run : holdouts) {
    const SpectralField f = run.config.make_force(run.config.grid());
    for (int q : qs) {
      if (q + 1 >= run.trajectory.shell_count()) continue;
      VerificationReport rep =
          shell_duhamel_check(run.trajectory, f, q, p, run.config.nu, c_fit);
      rep.config_hash = run.config_hash;
      reports.push_back(std::move(rep));
    }
  }
  return finish_suite(reports, suite_output_dir(j), "shell-duhamel");
}

int verify_h1_persistence(const json& j, bool allow_mismatch) {
  const RunArtifacts train = load_run(
      j.at("train").get<std::string>(), allow_mismatch);
  const auto holdouts = load_runs(j, "runs", allow_mismatch);
  const double nu = train.config.nu;
  const double c_fit = fit_h1_persistence_constant(
      train.trajectory, train.trajectory.f_hm1, nu);
  std::vector<VerificationReport> reports;
  for (const auto& run : holdouts) {
    VerificationReport rep = h1_persistence_check(
        run.trajectory, run.trajectory.f_hm1, run.config.nu, c_fit);
    rep.details["horizon"] = volterra_majorant_horizon(
        run.trajectory, run.trajectory.f_hm1, run.config.nu, c_fit);
    rep.config_hash = run.config_hash;
    rep.finalize();
    reports.push_back(std::move(rep));
  }
  return finish_suite(reports, suite_output_dir(j), "h1-persistence");
}

int verify_riccati(const json& j, bool allow_mismatch) {
  const RunArtifacts train = load_run(
      j.at("train").get<std::string>(), allow_mismatch);
  const auto holdouts = load_runs(j, "runs", allow_mismatch);
  const double alpha = train.config.stepper.diag_alpha;
  const double c_fit =
      fit_riccati_constant(train.ray, alpha, train.config.nu);
  std::vector<VerificationReport> reports;
  for (const auto& run : holdouts) {
    VerificationReport rep = riccati_check(
        run.ray, run.config.stepper.diag_alpha, run.config.nu, c_fit);
    rep.config_hash = run.config_hash;
    reports.push_back(std::move(rep));
  }
  return finish_suite(reports, suite_output_dir(j), "riccati");
}

int verify_heat_gain(const json& j) {
  if (!j.contains("run"))
    throw std::invalid_argument(
        "verify config: heat-gain needs a 'run' block (grid/force/initial)");
  const RunConfig cfg = config_from_json_string(j.at("run").dump());
  const int t_count = j.value("t_count", 25);
  const GridSpec grid = cfg.grid();
  const SpectralField u0 = cfg.make_initial(grid);
  const SpectralField f = cfg.make_force(grid);
  std::vector<double> t_grid;
  for (int i = 1; i <= t_count; ++i)
    t_grid.push_back(cfg.stepper.t_final * i / t_count);
  VerificationReport rep =
      heat_gain_check(u0, f, cfg.nu, cfg.stepper.diag_alpha, t_grid);
  rep.config_hash = cfg.hash();
  std::vector<VerificationReport> reports{std::move(rep)};
  return finish_suite(reports, suite_output_dir(j), "heat-gain");
}

int run_sweep(const json& j, const fs::path& dir) {
  if (!j.contains("alphas") || j.at("alphas").empty())
    throw std::invalid_argument("sweep config: empty 'alphas' list");
  const auto alphas = j.at("alphas").get<std::vector<double>>();
  const auto resolutions = j.value("resolutions", std::vector<int>{});
  const auto seeds = j.value("seeds", std::vector<uint64_t>{});
  if (resolutions.empty() || seeds.empty())
    throw std::invalid_argument("sweep config: empty 'resolutions' or 'seeds'");
  const double nu = j.value("nu", 0.1);
  const double t_final = j.value("t_final", 0.5);
  const double u0_amplitude = j.value("u0_amplitude", 1.0);
  const uint64_t u0_seed = j.value("u0_seed", uint64_t(7));
  const auto super_exponents =
      j.value("super_exponents", std::vector<double>{-0.3, -0.9, -0.95});

  StepperConfig base;
  base.dt = j.value("dt", 2e-3);
  base.scheme = scheme_from_string(j.value("scheme", std::string("IF-RK2")));
  base.record_every = 0;

  json merged;
  merged["schema_version"] = 1;
  merged["cells"] = json::array();
  std::ofstream csv(dir / "sweep_cells.csv");
  csv << "n,alpha,seed,sup_h_alpha2,sup_h1,f_halpha";
  for (size_t i = 0; i < super_exponents.size(); ++i)
    csv << ",f_super_" << fmt(super_exponents[i]);
  csv << ",c_h1_fit,energy_min_margin,fault\n";

  for (double alpha : alphas) {
    ForceSpec force;
    force.alpha = alpha;
    force.profile = alpha <= -1.0 + 1e-12 ? ForceProfile::critical_log
                                          : ForceProfile::power_tail;
    force.delta = j.value("force_delta", 0.25);
    force.amplitude = j.value("force_amplitude", 0.5);
    const DerivativeGainReport rep = derivative_gain_experiment(
        alpha, force, u0_amplitude, u0_seed, resolutions, seeds, t_final, nu,
        base, super_exponents);
    for (const auto& cell : rep.cells) {
      json c;
      c["n"] = cell.n;
      c["alpha"] = alpha;
      c["seed"] = cell.seed;
      c["sup_h_alpha2"] = cell.sup_ha2;
      c["sup_h1"] = cell.sup_h1;
      c["f_halpha"] = cell.f_halpha;
      c["f_supercritical"] = cell.f_supercritical;
      c["c_h1_fit"] = cell.c_h1_fit;
      c["energy_min_margin"] = cell.energy_min_margin;
      c["fault"] = to_string(cell.fault.kind);
      merged["cells"].push_back(c);

      csv << cell.n << ',' << fmt(alpha) << ',' << cell.seed << ','
          << fmt(cell.sup_ha2) << ',' << fmt(cell.sup_h1) << ','
          << fmt(cell.f_halpha);
      for (double v : cell.f_supercritical) csv << ',' << fmt(v);
      csv << ',' << fmt(cell.c_h1_fit) << ',' << fmt(cell.energy_min_margin)
          << ',' << to_string(cell.fault.kind) << '\n';
    }
  }
  std::ofstream out(dir / "sweep_merged.json");
  out << merged.dump(2) << '\n';
  std::cout << "sweep: " << merged["cells"].size() << " cells -> "
            << dir.string() << "\n";
  return 0;
}

}  // namespace

int cmd_simulate(const fs::path& config_path) {
  try {
    const RunConfig cfg = config_from_file(config_path);
    return run_simulate(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "simulate: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "simulate: error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_verify(const std::string& suite, const fs::path& config_path,
               bool allow_hash_mismatch) {
  try {
    const json j = load_json(config_path);
    if (suite == "energy") return verify_energy(j, allow_hash_mismatch);
    if (suite == "lemma") return verify_lemma(j, config_path.parent_path());
    if (suite == "gronwall") return verify_gronwall(j, allow_hash_mismatch);
    if (suite == "shell-duhamel")
      return verify_shell_duhamel(j, allow_hash_mismatch);
    if (suite == "h1-persistence")
      return verify_h1_persistence(j, allow_hash_mismatch);
    if (suite == "riccati") return verify_riccati(j, allow_hash_mismatch);
    if (suite == "heat-gain") return verify_heat_gain(j);
    std::cerr << "verify: unknown suite '" << suite
              << "' (energy | lemma | gronwall | shell-duhamel | "
                 "h1-persistence | riccati | heat-gain)\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "verify: error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_sweep(const fs::path& config_path) {
  try {
    const json j = load_json(config_path);
    fs::path dir = j.value("output_dir", std::string("out/sweep"));
    if (const char* root = std::getenv("TNS_OUTPUT_ROOT"))
      dir = fs::path(root) / dir;
    fs::create_directories(dir);
    return run_sweep(j, dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "sweep: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "sweep: error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_report_merge(const fs::path& dir) {
  try {
    json merged;
    merged["schema_version"] = 1;
    merged["reports"] = json::array();
    std::vector<fs::path> paths;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      const std::string name = entry.path().filename().string();
      if (entry.is_regular_file() && name.rfind("report_", 0) == 0 &&
          entry.path().extension() == ".json")
        paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    std::ofstream csv(dir / "reports_summary.csv");
    csv << "path,id,pass,min_margin,config_hash\n";
    bool all_pass = true;
    for (const auto& p : paths) {
      const VerificationReport rep = report_from_json_file(p);
      json item;
      item["path"] = fs::relative(p, dir).string();
      item["id"] = rep.id;
      item["pass"] = rep.pass;
      item["min_margin"] = rep.min_margin;
      item["config_hash"] = rep.config_hash;
      merged["reports"].push_back(item);
      csv << fs::relative(p, dir).string() << ',' << rep.id << ','
          << (rep.pass ? "true" : "false") << ',' << fmt(rep.min_margin) << ','
          << rep.config_hash << '\n';
      all_pass = all_pass && rep.pass;
    }
    std::ofstream out(dir / "merged_reports.json");
    out << merged.dump(2) << '\n';
    std::cout << "report: merged " << paths.size() << " reports under "
              << dir.string() << "\n";
    return all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "report: error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace tns
