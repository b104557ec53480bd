#ifndef CONTACTGEO_SUITES_HPP
#define CONTACTGEO_SUITES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "contactgeo/report.hpp"

namespace contactgeo {

struct SuiteConfig {
  std::string suite = "all";
  int n = 1;         // sphere dimension parameter: S^{4n+3} in R^{4n+4}
  int m = 3;         // quaternionic dimension bound
  int samples = 200;
  std::uint64_t seed = 0x5eed;
  int grid_theta = 24;
  int grid_phi = 12;
  double rk4_step = 1e-3;
  std::map<std::string, double> tolerances;  // overrides by check family

  void validate() const;  // throws std::invalid_argument
};

const std::vector<std::string>& suite_names();

/// One table of default tolerances per check family; individual entries
/// can be overridden through SuiteConfig::tolerances.
const std::map<std::string, double>& default_tolerances();

/// Runs the configured suite. Check failures and thrown errors are
/// recorded in the report, never propagated; the result is deterministic
/// for a fixed configuration and seed.
VerificationReport run_suite(const SuiteConfig& config);

}  // namespace contactgeo

#endif  // CONTACTGEO_SUITES_HPP
