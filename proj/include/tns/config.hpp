#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tns/evolution.hpp"
#include "tns/forcing.hpp"

namespace tns {

// Initial-data recipes available from configuration files
enum class InitialKind { zero, taylor_green, random_sobolev };
InitialKind initial_kind_from_string(const std::string& s);
std::string to_string(InitialKind k);

struct InitialSpec {
  InitialKind kind = InitialKind::taylor_green;
  double s = 1.0;          // Sobolev class for random data
  double delta = 0.25;
  double amplitude = 1.0;
  uint64_t seed = 0;
};

// Fully materialized run configuration.  After parsing, every field is
// explicit; the canonical JSON serialization (sorted keys, shortest float
// form) identifies the run through its FNV-1a hash.
struct RunConfig {
  int schema_version = 1;
  std::string experiment = "nse";  // nse | heat | complex_ray
  // grid
  int n = 64;
  double nu = 0.1;
  double dealias_fraction = 2.0 / 3.0;
  // stepper
  StepperConfig stepper;
  // force and data
  ForceSpec force;
  InitialSpec initial;
  // complex-ray extras
  double theta = 0.0;
  double s_max = 0.5;
  int galerkin_n = 16;
  // bookkeeping
  std::string output_dir = "out";
  uint64_t seed = 0;

  GridSpec grid() const { return GridSpec(n, nu, dealias_fraction); }
  SpectralField make_force(const GridSpec& g) const;
  SpectralField make_initial(const GridSpec& g) const;

  std::string canonical_json() const;
  std::string hash() const;
  void validate() const;
};

RunConfig config_from_json_string(const std::string& text);
RunConfig config_from_file(const std::filesystem::path& path);
void write_config(const RunConfig& cfg, const std::filesystem::path& path);

// output root override: $TNS_OUTPUT_ROOT, else the config's output_dir as-is
std::filesystem::path resolve_output_dir(const RunConfig& cfg);

}  // namespace tns
