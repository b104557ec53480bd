// Command-line driver: runs a verification suite and prints one line per
// check, optionally writing a machine-readable JSON report.

#include <cstdio>
#include <exception>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "contactgeo/report.hpp"
#include "contactgeo/suites.hpp"

namespace {

int run(int argc, char** argv) {
  CLI::App app{"Numerical verification suites for contact-geometric constructions on spheres"};

  contactgeo::SuiteConfig config;
  std::string report_path;
  std::string config_path;
  std::vector<std::string> tolerance_args;
  bool timings = false;

  app.add_option("suite", config.suite,
                 "Suite: quaternion | contact | transport | sphere-family | degree | roundtrip | all")
      ->required();
  auto* opt_n = app.add_option("--n", config.n, "Sphere dimension parameter (S^{4n+3})");
  auto* opt_m = app.add_option("--m", config.m, "Quaternionic dimension bound");
  auto* opt_samples = app.add_option("--samples", config.samples, "Seeded sample count");
  auto* opt_seed = app.add_option("--seed", config.seed, "RNG seed");
  auto* opt_gt = app.add_option("--grid-theta", config.grid_theta, "Azimuthal grid size");
  auto* opt_gp = app.add_option("--grid-phi", config.grid_phi, "Polar grid size");
  auto* opt_step = app.add_option("--rk4-step", config.rk4_step, "RK4 integration step");
  app.add_option("--tol", tolerance_args, "Tolerance override name=value (repeatable)");
  app.add_option("--report", report_path, "Write the JSON report to this path");
  app.add_option("--config", config_path, "JSON config file (flags take precedence)");
  app.add_flag("--timings", timings,
               "Embed measured wall times in the report (breaks byte reproducibility)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    (void)app.exit(err);
    return 2;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::invalid_argument("cannot open config file '" + config_path + "'");
      nlohmann::json doc = nlohmann::json::parse(in);
      if (doc.contains("n") && opt_n->count() == 0) config.n = doc["n"].get<int>();
      if (doc.contains("m") && opt_m->count() == 0) config.m = doc["m"].get<int>();
      if (doc.contains("samples") && opt_samples->count() == 0)
        config.samples = doc["samples"].get<int>();
      if (doc.contains("seed") && opt_seed->count() == 0)
        config.seed = doc["seed"].get<std::uint64_t>();
      if (doc.contains("gridTheta") && opt_gt->count() == 0)
        config.grid_theta = doc["gridTheta"].get<int>();
      if (doc.contains("gridPhi") && opt_gp->count() == 0)
        config.grid_phi = doc["gridPhi"].get<int>();
      if (doc.contains("rk4Step") && opt_step->count() == 0)
        config.rk4_step = doc["rk4Step"].get<double>();
      if (doc.contains("tolerances")) {
        for (const auto& [key, value] : doc["tolerances"].items()) {
          config.tolerances.emplace(key, value.get<double>());
        }
      }
    }
    for (const std::string& arg : tolerance_args) {
      const auto sep = arg.find('=');
      if (sep == std::string::npos) {
        throw std::invalid_argument("--tol expects name=value, got '" + arg + "'");
      }
      config.tolerances[arg.substr(0, sep)] = std::stod(arg.substr(sep + 1));
    }
    config.validate();
  } catch (const std::exception& err) {
    std::fprintf(stderr, "configuration error: %s\n", err.what());
    return 2;
  }

  const contactgeo::VerificationReport report = contactgeo::run_suite(config);
  for (const contactgeo::CheckResult& check : report.checks) {
    std::printf("[%s] %-38s residual=%-12.3e tol=%-9.1e (%.2fs)%s%s\n",
                check.pass ? "PASS" : "FAIL", check.name.c_str(), check.max_residual,
                check.tolerance, check.wall_time_seconds, check.note.empty() ? "" : "  ",
                check.note.c_str());
  }
  std::printf("%s: %zu checks, overall %s\n", report.suite.c_str(), report.checks.size(),
              report.overall() ? "PASS" : "FAIL");

  if (!report_path.empty()) {
    try {
      contactgeo::emit_report(report, report_path, timings);
    } catch (const std::exception& err) {
      std::fprintf(stderr, "report error: %s\n", err.what());
      return 2;
    }
  }
  return report.overall() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
