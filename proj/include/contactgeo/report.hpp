#ifndef CONTACTGEO_REPORT_HPP
#define CONTACTGEO_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace contactgeo {

inline constexpr const char* kArtifactVersion = "contactgeo 0.1.0";

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double wall_time_seconds = 0.0;
  std::string note;  // error message when a check throws
};

struct VerificationReport {
  std::string suite;
  nlohmann::json config_echo;
  std::vector<CheckResult> checks;
  std::string artifact_version = kArtifactVersion;

  bool overall() const;
};

/// Key-sorted JSON rendering. Wall times are zeroed unless requested, so
/// two runs with the same configuration and seed produce identical bytes.
nlohmann::json report_to_json(const VerificationReport& report, bool includeTimings = false);

/// Writes the report (trailing newline, UTF-8). Throws std::runtime_error
/// with the path on I/O failure.
void emit_report(const VerificationReport& report, const std::string& path,
                 bool includeTimings = false);

}  // namespace contactgeo

#endif  // CONTACTGEO_REPORT_HPP
