#include "tns/report.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tns {

void VerificationReport::finalize() {
  if (lhs.size() != rhs.size() || lhs.size() != times.size())
    throw std::logic_error("VerificationReport: ragged arrays in '" + id + "'");
  min_margin = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < lhs.size(); ++i)
    min_margin = std::min(min_margin, rhs[i] - lhs[i]);
  if (lhs.empty()) min_margin = 0.0;
  pass = min_margin >= 0.0;
}

namespace {

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["id"] = r.id;
  j["times"] = r.times;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["fitted_constants"] = r.fitted_constants;
  j["details"] = r.details;
  j["min_margin"] = r.min_margin;
  j["pass"] = r.pass;
  j["config_hash"] = r.config_hash;
  return j;
}

}  // namespace

std::string VerificationReport::to_json_string() const {
  return to_json(*this).dump(2);
}

void VerificationReport::write_json(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("VerificationReport: cannot open " + path.string());
  out << to_json_string() << '\n';
}

VerificationReport report_from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("report_from_json_file: cannot open " +
                             path.string());
  nlohmann::json j;
  in >> j;
  VerificationReport r;
  r.id = j.at("id").get<std::string>();
  r.times = j.at("times").get<std::vector<double>>();
  r.lhs = j.at("lhs").get<std::vector<double>>();
  r.rhs = j.at("rhs").get<std::vector<double>>();
  r.fitted_constants =
      j.at("fitted_constants").get<std::map<std::string, double>>();
  r.details = j.at("details").get<std::map<std::string, double>>();
  r.min_margin = j.at("min_margin").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.config_hash = j.at("config_hash").get<std::string>();
  return r;
}

std::string fnv1a_hex(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string file_checksum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("file_checksum: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return fnv1a_hex(ss.str());
}

}  // namespace tns
