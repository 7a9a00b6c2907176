#include "tns/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tns/report.hpp"

namespace tns {

InitialKind initial_kind_from_string(const std::string& s) {
  if (s == "zero") return InitialKind::zero;
  if (s == "taylor_green") return InitialKind::taylor_green;
  if (s == "random_sobolev") return InitialKind::random_sobolev;
  throw std::invalid_argument("unknown initial kind '" + s + "'");
}

std::string to_string(InitialKind k) {
  switch (k) {
    case InitialKind::zero: return "zero";
    case InitialKind::taylor_green: return "taylor_green";
    case InitialKind::random_sobolev: return "random_sobolev";
  }
  return "?";
}

SpectralField RunConfig::make_force(const GridSpec& g) const {
  ForceSpec fs = force;
  fs.n = g.n;
  return synthesize_force(fs, g);
}

SpectralField RunConfig::make_initial(const GridSpec& g) const {
  switch (initial.kind) {
    case InitialKind::zero: return SpectralField(g);
    case InitialKind::taylor_green: return taylor_green(g, initial.amplitude);
    case InitialKind::random_sobolev:
      return random_sobolev_field(g, initial.s, initial.delta,
                                  initial.amplitude, initial.seed);
  }
  throw std::logic_error("make_initial: unreachable");
}

void RunConfig::validate() const {
  GridSpec check(n, nu, dealias_fraction);  // throws on bad grid parameters
  (void)check;
  stepper.validate();
  force.validate();
  if (experiment != "nse" && experiment != "heat" && experiment != "complex_ray")
    throw std::invalid_argument("RunConfig: unknown experiment '" + experiment +
                                "' (nse | heat | complex_ray)");
  if (schema_version != 1)
    throw std::invalid_argument("RunConfig: unsupported schema_version");
}

namespace {

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["schema_version"] = c.schema_version;
  j["experiment"] = c.experiment;
  j["grid"] = {{"n", c.n},
               {"nu", c.nu},
               {"dealias_fraction", c.dealias_fraction}};
  j["stepper"] = {{"dt", c.stepper.dt},
                  {"scheme", to_string(c.stepper.scheme)},
                  {"t_final", c.stepper.t_final},
                  {"record_every", c.stepper.record_every},
                  {"cfl_safety", c.stepper.cfl_safety},
                  {"diag_alpha", c.stepper.diag_alpha},
                  {"energy_tol_per_dt", c.stepper.energy_tol_per_dt}};
  j["force"] = {{"profile", to_string(c.force.profile)},
                {"alpha", c.force.alpha},
                {"delta", c.force.delta},
                {"amplitude", c.force.amplitude},
                {"seed", c.force.seed}};
  j["initial"] = {{"kind", to_string(c.initial.kind)},
                  {"s", c.initial.s},
                  {"delta", c.initial.delta},
                  {"amplitude", c.initial.amplitude},
                  {"seed", c.initial.seed}};
  j["theta"] = c.theta;
  j["s_max"] = c.s_max;
  j["galerkin_n"] = c.galerkin_n;
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  return j;
}

template <typename T>
T require_field(const nlohmann::json& j, const std::string& section,
                const std::string& key) {
  if (!j.contains(key))
    throw std::invalid_argument("config: missing required field '" + section +
                                (section.empty() ? "" : ".") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument("config: field '" + section +
                                (section.empty() ? "" : ".") + key +
                                "' has the wrong type");
  }
}

template <typename T>
T optional_field(const nlohmann::json& j, const std::string& section,
                 const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument("config: field '" + section +
                                (section.empty() ? "" : ".") + key +
                                "' has the wrong type");
  }
}

}  // namespace

RunConfig config_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") +
                                e.what());
  }
  RunConfig c;
  c.schema_version = optional_field<int>(j, "", "schema_version", 1);
  c.experiment = optional_field<std::string>(j, "", "experiment", "nse");
  if (!j.contains("grid"))
    throw std::invalid_argument("config: missing required section 'grid'");
  const auto& g = j.at("grid");
  c.n = require_field<int>(g, "grid", "n");
  c.nu = require_field<double>(g, "grid", "nu");
  c.dealias_fraction =
      optional_field<double>(g, "grid", "dealias_fraction", 2.0 / 3.0);

  if (j.contains("stepper")) {
    const auto& s = j.at("stepper");
    c.stepper.dt = require_field<double>(s, "stepper", "dt");
    c.stepper.scheme = scheme_from_string(
        optional_field<std::string>(s, "stepper", "scheme", "IF-RK4"));
    c.stepper.t_final = require_field<double>(s, "stepper", "t_final");
    c.stepper.record_every =
        optional_field<int>(s, "stepper", "record_every", 0);
    c.stepper.cfl_safety =
        optional_field<double>(s, "stepper", "cfl_safety", 0.5);
    c.stepper.diag_alpha =
        optional_field<double>(s, "stepper", "diag_alpha", -0.5);
    c.stepper.energy_tol_per_dt =
        optional_field<double>(s, "stepper", "energy_tol_per_dt", 1.0);
  }

  if (j.contains("force")) {
    const auto& f = j.at("force");
    c.force.profile = force_profile_from_string(
        require_field<std::string>(f, "force", "profile"));
    c.force.alpha = optional_field<double>(f, "force", "alpha", -1.0);
    c.force.delta = optional_field<double>(f, "force", "delta", 0.25);
    c.force.amplitude = optional_field<double>(f, "force", "amplitude", 1.0);
    c.force.seed = optional_field<uint64_t>(f, "force", "seed", 0);
  } else {
    c.force.profile = ForceProfile::zero;
  }

  if (j.contains("initial")) {
    const auto& u = j.at("initial");
    c.initial.kind = initial_kind_from_string(
        require_field<std::string>(u, "initial", "kind"));
    c.initial.s = optional_field<double>(u, "initial", "s", 1.0);
    c.initial.delta = optional_field<double>(u, "initial", "delta", 0.25);
    c.initial.amplitude =
        optional_field<double>(u, "initial", "amplitude", 1.0);
    c.initial.seed = optional_field<uint64_t>(u, "initial", "seed", 0);
  }

  c.theta = optional_field<double>(j, "", "theta", 0.0);
  c.s_max = optional_field<double>(j, "", "s_max", 0.5);
  c.galerkin_n = optional_field<int>(j, "", "galerkin_n", 16);
  c.output_dir = optional_field<std::string>(j, "", "output_dir", "out");
  c.seed = optional_field<uint64_t>(j, "", "seed", 0);
  c.validate();
  return c;
}

RunConfig config_from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("config: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json_string(ss.str());
}

std::string RunConfig::canonical_json() const {
  return to_json(*this).dump(2);  // nlohmann keeps keys sorted
}

std::string RunConfig::hash() const { return fnv1a_hex(canonical_json()); }

void write_config(const RunConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("write_config: cannot open " + path.string());
  out << cfg.canonical_json() << '\n';
}

std::filesystem::path resolve_output_dir(const RunConfig& cfg) {
  if (const char* root = std::getenv("TNS_OUTPUT_ROOT"))
    return std::filesystem::path(root) / cfg.output_dir;
  return cfg.output_dir;
}

}  // namespace tns
