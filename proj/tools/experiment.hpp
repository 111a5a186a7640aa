#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "glab/liealg.hpp"
#include "glab/scalar.hpp"

namespace glab::cli {

/// Schema violation; `pointer` is a JSON pointer to the offending field.
struct ConfigError : std::runtime_error {
  std::string pointer;
  ConfigError(std::string ptr, const std::string& what) : std::runtime_error(ptr + ": " + what), pointer(std::move(ptr)) {}
};

struct Tolerances {
  double newton = 1e-10;
  double bethe_residual = 1e-8;
  double eigen = 1e-8;
  double spectrum = 1e-8;
  double residue = 1e-8;
  double eigenvalue_function = 1e-8;
  double monodromy_local = 1e-5;
  double monodromy_global = 1e-4;
  double control_min = 1e-2;  // least projective distance certifying a non-trivial monodromy

  Tolerances scaled(double s) const;
  nlohmann::json to_json() const;
};

struct ExperimentConfig {
  std::string pipeline;
  std::string algebra;
  std::vector<Weight> weights;
  std::vector<Complex> points;
  std::vector<std::optional<Rational>> exact_points;  // set when the point was given as a rational
  std::optional<Weight> chi;
  std::vector<Weight> gammas;  // DMT directions; defaults to the fundamental weights
  Tolerances tol;
  std::uint64_t seed = 1;
  double control_kappa = 0.65;
  std::string output;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  std::vector<Rational> rational_points() const;  // throws ConfigError if some point is not rational
};

struct Check {
  std::string name;
  std::string operation;  // module operation under test
  std::string anchor;     // mathematical statement the check exercises
  bool pass = false;
  nlohmann::json detail;
  nlohmann::json to_json() const;
};

struct Report {
  std::string pipeline;
  nlohmann::json config;
  std::vector<Check> checks;
  nlohmann::json data = nlohmann::json::object();
  std::map<std::string, std::string> files;  // extra artifacts (CSV), by file name

  bool pass() const;
  nlohmann::json to_json() const;
};

const std::vector<std::string>& pipelines();

/// Runs the configured pipeline. Throws ConfigError on data the pipeline cannot accept.
Report run_pipeline(const ExperimentConfig& c);

/// Writes report.json, CSV files and plots under `out`; returns the exit code (0 pass, 1 failed check).
int write_report(const Report& r, const std::filesystem::path& out);

/// Static SVG renderings of a report; missing sections are skipped with a warning.
std::vector<std::string> report_plot(const nlohmann::json& report, const std::filesystem::path& out, std::ostream& warn);

}  // namespace glab::cli
