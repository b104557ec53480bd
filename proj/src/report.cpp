#include "contactgeo/report.hpp"

#include <cmath>
#include <fstream>

namespace contactgeo {

bool VerificationReport::overall() const {
  for (const CheckResult& check : checks) {
    if (!check.pass) return false;
  }
  return true;
}

namespace {

// JSON has no infinities; failed checks that threw carry a sentinel.
double clamp_residual(double value) {
  if (!std::isfinite(value)) return 1e300;
  return value;
}

}  // namespace

nlohmann::json report_to_json(const VerificationReport& report, bool includeTimings) {
  nlohmann::json doc;
  doc["artifactVersion"] = report.artifact_version;
  doc["suite"] = report.suite;
  doc["config"] = report.config_echo;
  doc["overall"] = report.overall();
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& check : report.checks) {
    nlohmann::json entry;
    entry["name"] = check.name;
    entry["maxResidual"] = clamp_residual(check.max_residual);
    entry["tolerance"] = check.tolerance;
    entry["pass"] = check.pass;
    entry["wallTimeSeconds"] = includeTimings ? check.wall_time_seconds : 0.0;
    if (!check.note.empty()) entry["note"] = check.note;
    checks.push_back(entry);
  }
  doc["checks"] = checks;
  return doc;
}

void emit_report(const VerificationReport& report, const std::string& path,
                 bool includeTimings) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_report: cannot open '" + path + "' for writing");
  out << report_to_json(report, includeTimings).dump(2) << "\n";
  if (!out) throw std::runtime_error("emit_report: write to '" + path + "' failed");
}

}  // namespace contactgeo
