#include <string>

#include <CLI11.hpp>

#include "tns/orchestrate.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral torus flow solver and inequality harness"};
  app.require_subcommand(1);

  std::string sim_config;
  auto* sim = app.add_subcommand("simulate", "run a configured experiment");
  sim->add_option("--config", sim_config, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);

  std::string verify_suite, verify_config;
  bool allow_mismatch = false;
  auto* ver = app.add_subcommand("verify", "check an inequality suite");
  ver->add_option("--suite", verify_suite,
                  "energy | lemma | gronwall | shell-duhamel | h1-persistence "
                  "| riccati | heat-gain")
      ->required();
  ver->add_option("--config", verify_config, "JSON suite configuration")
      ->required()
      ->check(CLI::ExistingFile);
  ver->add_flag("--allow-hash-mismatch", allow_mismatch,
                "accept artifacts whose recorded hashes do not match");

  std::string sweep_config;
  auto* swp = app.add_subcommand("sweep", "resolution / seed / alpha fan-out");
  swp->add_option("--config", sweep_config, "JSON sweep configuration")
      ->required()
      ->check(CLI::ExistingFile);

  std::string merge_dir;
  auto* rep = app.add_subcommand("report", "merge verification reports");
  rep->add_option("--merge", merge_dir, "directory holding report_*.json")
      ->required()
      ->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) return tns::cmd_simulate(sim_config);
  if (ver->parsed())
    return tns::cmd_verify(verify_suite, verify_config, allow_mismatch);
  if (swp->parsed()) return tns::cmd_sweep(sweep_config);
  if (rep->parsed()) return tns::cmd_report_merge(merge_dir);
  return 2;
}
