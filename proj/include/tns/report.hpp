#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace tns {

// Record of one verified inequality: checked times, both sides, fitted
// constants, and the margin summary.  pass holds exactly when the margin
// rhs - lhs is nonnegative at every checked point.
struct VerificationReport {
  std::string id;
  std::vector<double> times;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::map<std::string, double> fitted_constants;
  std::map<std::string, double> details;
  double min_margin = 0.0;
  bool pass = false;
  std::string config_hash;

  void finalize();  // derives min_margin and pass from the arrays
  double margin_at(size_t i) const { return rhs[i] - lhs[i]; }
  std::string to_json_string() const;
  void write_json(const std::filesystem::path& path) const;
};

VerificationReport report_from_json_file(const std::filesystem::path& path);

// FNV-1a 64-bit over a byte string, rendered as fixed-width hex; used both
// for config identity and artifact content checksums
std::string fnv1a_hex(const std::string& bytes);
std::string file_checksum(const std::filesystem::path& path);

}  // namespace tns
