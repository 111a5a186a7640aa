#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "experiment.hpp"

namespace {

int run(const std::string& config_path, std::string out, std::optional<std::uint64_t> seed, double tol_scale) {
  using glab::cli::ConfigError;
  nlohmann::json j;
  {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "glab: cannot read " << config_path << "\n";
      return 2;
    }
    try {
      in >> j;
    } catch (const std::exception& e) {
      std::cerr << "glab: " << config_path << " is not valid JSON: " << e.what() << "\n";
      return 2;
    }
  }
  glab::cli::ExperimentConfig cfg;
  try {
    cfg = glab::cli::ExperimentConfig::from_json(j);
  } catch (const ConfigError& e) {
    std::cerr << "glab: config error: " << e.what() << "\n";
    return 2;
  }
  if (seed) cfg.seed = *seed;
  if (tol_scale <= 0) {
    std::cerr << "glab: --tol-scale must be positive\n";
    return 2;
  }
  cfg.tol = cfg.tol.scaled(tol_scale);
  if (out.empty()) out = cfg.output;
  if (out.empty()) {
    std::cerr << "glab: no output directory (--out or \"output\" in the config)\n";
    return 2;
  }

  glab::cli::Report report;
  try {
    report = glab::cli::run_pipeline(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "glab: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "glab: pipeline " << cfg.pipeline << " aborted: " << e.what() << "\n";
    return 1;
  }
  int code = glab::cli::write_report(report, out);
  for (const auto& c : report.checks)
    std::cout << (c.pass ? "ok    " : "FAIL  ") << c.name << "  [" << c.operation << "]"
              << (c.pass ? "" : "  -- " + c.anchor + " " + c.detail.dump()) << "\n";
  std::cout << "report: " << (std::filesystem::path(out) / "report.json").string() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaudin models with irregular singularities: Hamiltonians, Bethe ansatz and opers"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run the pipeline of an experiment config");
  std::string config, out;
  std::optional<std::uint64_t> seed;
  double tol_scale = 1.0;
  run_cmd->add_option("--config", config, "experiment JSON")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out, "report directory");
  run_cmd->add_option("--seed", seed, "overrides the config seed");
  run_cmd->add_option("--tol-scale", tol_scale, "multiplies every numerical tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return run(config, out, seed, tol_scale);
}
