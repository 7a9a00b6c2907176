#pragma once

#include <filesystem>
#include <string>

namespace tns {

// Library-level implementations of the CLI subcommands; the binary in
// tools/ is a thin argument-parsing wrapper.  All return process exit codes:
// 0 success (and, for verify, all pass flags true), 1 verification failure,
// 2 configuration or artifact error.

int cmd_simulate(const std::filesystem::path& config_path);

int cmd_verify(const std::string& suite,
               const std::filesystem::path& config_path,
               bool allow_hash_mismatch = false);

int cmd_sweep(const std::filesystem::path& config_path);

int cmd_report_merge(const std::filesystem::path& dir);

}  // namespace tns
