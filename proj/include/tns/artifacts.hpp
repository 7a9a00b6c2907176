#pragma once

#include <filesystem>
#include <string>

#include "tns/complex_ray.hpp"
#include "tns/config.hpp"
#include "tns/evolution.hpp"

namespace tns {

// Run directory layout written by the simulate command:
//   config.json      materialized configuration (canonical form)
//   metadata.json    config hash, artifact checksums, fault record, norms
//   trajectory.csv   one row per step (real runs)
//   ray.csv          one row per step (complex-ray runs)
//   snapshots/       spectral dumps at the recording stride (optional)

void write_trajectory_csv(const Trajectory& traj,
                          const std::filesystem::path& path);
Trajectory read_trajectory_csv(const std::filesystem::path& path,
                               const GridSpec& grid);

void write_ray_csv(const ComplexTrajectory& traj,
                   const std::filesystem::path& path);
ComplexTrajectory read_ray_csv(const std::filesystem::path& path,
                               const GridSpec& grid);

struct RunArtifacts {
  RunConfig config;
  std::filesystem::path dir;
  Trajectory trajectory;          // populated for nse/heat runs
  ComplexTrajectory ray;          // populated for complex_ray runs
  std::string config_hash;
};

// Loads and validates a run directory: the stored config must hash to the
// recorded value and every artifact must match its recorded checksum, unless
// allow_hash_mismatch is set.
RunArtifacts load_run(const std::filesystem::path& dir,
                      bool allow_hash_mismatch = false);

// metadata writer used by the simulate command
void write_run_metadata(const RunConfig& cfg, const std::filesystem::path& dir,
                        const Trajectory* traj, const ComplexTrajectory* ray);

}  // namespace tns
