#include "tns/artifacts.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tns/littlewood_paley.hpp"
#include "tns/report.hpp"

namespace tns {

namespace {

void append_double(std::string& row, double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  row.append(buf, res.ptr);
}

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const size_t pos = line.find(',');
    if (pos == std::string_view::npos) {
      out.push_back(line);
      return out;
    }
    out.push_back(line.substr(0, pos));
    line = line.substr(pos + 1);
  }
}

double parse_double(std::string_view s, const std::filesystem::path& p) {
  double x = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::runtime_error("corrupt CSV value '" + std::string(s) + "' in " +
                             p.string());
  return x;
}

}  // namespace

void write_trajectory_csv(const Trajectory& traj,
                          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("write_trajectory_csv: cannot open " +
                             path.string());
  std::string header = "t,l2,h1,h_alpha1,h_alpha2,lp_h1,energy_margin";
  for (int q = -1; q < traj.shell_count() - 1; ++q)
    header += ",shell_" + std::to_string(q);
  out << header << '\n';
  for (size_t i = 0; i < traj.t.size(); ++i) {
    std::string row;
    append_double(row, traj.t[i]);
    for (double v : {traj.l2[i], traj.h1[i], traj.ha1[i], traj.ha2[i],
                     traj.lp_h1[i], traj.energy_margin[i]}) {
      row += ',';
      append_double(row, v);
    }
    for (double v : traj.shells[i]) {
      row += ',';
      append_double(row, v);
    }
    out << row << '\n';
  }
}

Trajectory read_trajectory_csv(const std::filesystem::path& path,
                               const GridSpec& grid) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("read_trajectory_csv: cannot open " +
                             path.string());
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("read_trajectory_csv: empty file " + path.string());
  const auto header = split_row(line);
  if (header.size() < 8 || header[0] != "t" || header[6] != "energy_margin")
    throw std::runtime_error("read_trajectory_csv: unexpected header in " +
                             path.string());
  const size_t n_shells = header.size() - 7;
  Trajectory traj;
  traj.grid = grid;
  double prev_t = -1.0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_row(line);
    if (f.size() != header.size())
      throw std::runtime_error("read_trajectory_csv: ragged row in " +
                               path.string());
    const double t = parse_double(f[0], path);
    if (t <= prev_t && prev_t >= 0.0)
      throw std::runtime_error("read_trajectory_csv: times not increasing in " +
                               path.string());
    prev_t = t;
    traj.t.push_back(t);
    traj.l2.push_back(parse_double(f[1], path));
    traj.h1.push_back(parse_double(f[2], path));
    traj.ha1.push_back(parse_double(f[3], path));
    traj.ha2.push_back(parse_double(f[4], path));
    traj.lp_h1.push_back(parse_double(f[5], path));
    traj.energy_margin.push_back(parse_double(f[6], path));
    std::vector<double> shells(n_shells);
    for (size_t q = 0; q < n_shells; ++q)
      shells[q] = parse_double(f[7 + q], path);
    traj.shells.push_back(std::move(shells));
  }
  if (traj.t.size() >= 2) traj.dt = traj.t[1] - traj.t[0];
  return traj;
}

void write_ray_csv(const ComplexTrajectory& traj,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("write_ray_csv: cannot open " + path.string());
  out << "s,l2,h_alpha1,h_alpha2\n";
  for (size_t i = 0; i < traj.s.size(); ++i) {
    std::string row;
    append_double(row, traj.s[i]);
    for (double v : {traj.l2[i], traj.ha1[i], traj.ha2[i]}) {
      row += ',';
      append_double(row, v);
    }
    out << row << '\n';
  }
}

ComplexTrajectory read_ray_csv(const std::filesystem::path& path,
                               const GridSpec& grid) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("read_ray_csv: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "s,l2,h_alpha1,h_alpha2")
    throw std::runtime_error("read_ray_csv: unexpected header in " +
                             path.string());
  ComplexTrajectory traj;
  traj.grid = grid;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_row(line);
    if (f.size() != 4)
      throw std::runtime_error("read_ray_csv: ragged row in " + path.string());
    traj.s.push_back(parse_double(f[0], path));
    traj.l2.push_back(parse_double(f[1], path));
    traj.ha1.push_back(parse_double(f[2], path));
    traj.ha2.push_back(parse_double(f[3], path));
  }
  if (traj.s.size() >= 2) traj.dt = traj.s[1] - traj.s[0];
  return traj;
}

void write_run_metadata(const RunConfig& cfg, const std::filesystem::path& dir,
                        const Trajectory* traj, const ComplexTrajectory* ray) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["config"] = nlohmann::json::parse(cfg.canonical_json());
  j["config_hash"] = cfg.hash();
  nlohmann::json checks = nlohmann::json::object();
  for (const char* name : {"trajectory.csv", "ray.csv"}) {
    const auto p = dir / name;
    if (std::filesystem::exists(p)) checks[name] = file_checksum(p);
  }
  j["artifact_checksums"] = checks;
  if (traj) {
    j["u0_l2"] = traj->u0_l2;
    j["f_hm1"] = traj->f_hm1;
    j["f_halpha"] = traj->f_halpha;
    j["fault"] = {{"kind", to_string(traj->fault.kind)},
                  {"time", traj->fault.time},
                  {"message", traj->fault.message}};
  }
  if (ray) {
    j["theta"] = ray->theta;
    j["f_halpha"] = ray->f_halpha;
    j["blowup_s"] = ray->blowup_s ? nlohmann::json(*ray->blowup_s)
                                  : nlohmann::json(nullptr);
  }
  std::ofstream out(dir / "metadata.json");
  if (!out)
    throw std::runtime_error("write_run_metadata: cannot open " +
                             (dir / "metadata.json").string());
  out << j.dump(2) << '\n';
}

RunArtifacts load_run(const std::filesystem::path& dir,
                      bool allow_hash_mismatch) {
  const auto meta_path = dir / "metadata.json";
  std::ifstream in(meta_path);
  if (!in)
    throw std::runtime_error(
        "load_run: missing " + meta_path.string() +
        "; run `simulate --config <file>` first to produce the trajectory");
  nlohmann::json meta;
  try {
    in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("load_run: corrupt metadata in " +
                             meta_path.string() + ": " + e.what());
  }

  RunArtifacts run;
  run.dir = dir;
  run.config = config_from_json_string(meta.at("config").dump());
  run.config_hash = meta.at("config_hash").get<std::string>();
  if (run.config.hash() != run.config_hash && !allow_hash_mismatch)
    throw std::runtime_error(
        "load_run: config hash mismatch in " + dir.string() +
        " (stored " + run.config_hash + ", recomputed " + run.config.hash() +
        "); pass --allow-hash-mismatch to override");

  const auto& checks = meta.at("artifact_checksums");
  for (auto it = checks.begin(); it != checks.end(); ++it) {
    const auto p = dir / it.key();
    if (!std::filesystem::exists(p))
      throw std::runtime_error("load_run: missing artifact " + p.string());
    if (file_checksum(p) != it.value().get<std::string>() &&
        !allow_hash_mismatch)
      throw std::runtime_error("load_run: checksum mismatch for " + p.string() +
                               " (artifact corrupted?)");
  }

  const GridSpec grid = run.config.grid();
  if (run.config.experiment == "complex_ray") {
    const GridSpec ray_grid(run.config.galerkin_n, run.config.nu,
                            run.config.dealias_fraction);
    run.ray = read_ray_csv(dir / "ray.csv", ray_grid);
    run.ray.theta = meta.at("theta").get<double>();
    run.ray.diag_alpha = run.config.stepper.diag_alpha;
    run.ray.f_halpha = meta.at("f_halpha").get<double>();
    if (!meta.at("blowup_s").is_null())
      run.ray.blowup_s = meta.at("blowup_s").get<double>();
  } else {
    run.trajectory = read_trajectory_csv(dir / "trajectory.csv", grid);
    run.trajectory.dt = run.config.stepper.dt;
    run.trajectory.scheme = run.config.stepper.scheme;
    run.trajectory.diag_alpha = run.config.stepper.diag_alpha;
    run.trajectory.u0_l2 = meta.at("u0_l2").get<double>();
    run.trajectory.f_hm1 = meta.at("f_hm1").get<double>();
    run.trajectory.f_halpha = meta.at("f_halpha").get<double>();
    const auto& fault = meta.at("fault");
    const std::string kind = fault.at("kind").get<std::string>();
    if (kind != "none") {
      run.trajectory.fault.kind = kind == "blow_up" ? SolverFault::Kind::blow_up
                                  : kind == "cfl"   ? SolverFault::Kind::cfl
                                                    : SolverFault::Kind::energy;
      run.trajectory.fault.time = fault.at("time").get<double>();
      run.trajectory.fault.message = fault.at("message").get<std::string>();
    }
  }
  return run;
}

}  // namespace tns
