#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "experiment.hpp"

using namespace glab;
using namespace glab::cli;
using nlohmann::json;

namespace {

json a1_pair(const std::string& pipeline) {
  return {{"pipeline", pipeline}, {"algebra", "A1"}, {"weights", {{1}, {1}}}, {"points", {0, 1}}, {"chi", {"3/2"}}};
}

std::string pointer_of(const json& j) {
  try {
    ExperimentConfig::from_json(j);
  } catch (const ConfigError& e) {
    return e.pointer;
  }
  return "<accepted>";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config schema") {
  auto ok = ExperimentConfig::from_json(a1_pair("commute"));
  CHECK(ok.points.size() == 2);
  CHECK(ok.exact_points[1] == Rational(1));
  CHECK((*ok.chi)[0] == make_rational(3, 2));

  auto j = a1_pair("bethe-census");
  j["chi"] = {"1", "2"};
  CHECK(pointer_of(j) == "/chi");
  j = a1_pair("bethe-census");
  j["chi"] = {0};
  CHECK(pointer_of(j) == "/chi");  // not regular
  j = a1_pair("commute");
  j["chi"] = {0};
  CHECK(pointer_of(j) == "<accepted>");  // commutativity needs no regularity
  j = a1_pair("commute");
  j["points"] = {0, "0/3"};
  CHECK(pointer_of(j) == "/points/1");
  j = a1_pair("commute");
  j["weights"] = {{1}, {-1}};
  CHECK(pointer_of(j) == "/weights/1/0");
  j = a1_pair("commute");
  j["pipeline"] = "nope";
  CHECK(pointer_of(j) == "/pipeline");
  j = a1_pair("commute");
  j["colour"] = 1;
  CHECK(pointer_of(j) == "/colour");
  j = a1_pair("commute");
  j["tolerances"] = {{"eigen", -1}};
  CHECK(pointer_of(j) == "/tolerances/eigen");
  j = a1_pair("commute");
  j["algebra"] = "Q7";
  CHECK(pointer_of(j) == "/algebra");

  j = a1_pair("bethe-census");
  j["points"] = {{0.0, 0.5}, {1.0, 0.0}};
  auto cplx = ExperimentConfig::from_json(j);
  CHECK_FALSE(cplx.exact_points[0].has_value());
  j["pipeline"] = "commute";
  CHECK_THROWS_AS(run_pipeline(ExperimentConfig::from_json(j)), ConfigError);

  Tolerances t;
  auto s = t.scaled(10);
  CHECK(s.eigen == doctest::Approx(1e-7));
  CHECK(s.control_min == doctest::Approx(1e-3));
}

TEST_CASE("commute pipeline reports exact zeros") {
  auto r = run_pipeline(ExperimentConfig::from_json(a1_pair("commute")));
  REQUIRE(r.checks.size() == 1);
  CHECK(r.pass());
  for (const auto& p : r.data["commutators"]) CHECK(p["zero"].get<bool>());
  CHECK(r.files.count("commutators.csv") == 1);
}

TEST_CASE("census pipeline counts") {
  auto r = run_pipeline(ExperimentConfig::from_json(a1_pair("bethe-census")));
  CHECK(r.pass());
  const auto& c = r.data["census"];
  CHECK(c["counts_by_m"]["0"] == 1);
  CHECK(c["counts_by_m"]["1"] == 2);
  CHECK(c["counts_by_m"]["2"] == 1);
  CHECK(c["total"] == 4);
}

TEST_CASE("reports are deterministic and failures give exit code 1") {
  auto dir = std::filesystem::temp_directory_path() / "glab_test_cli";
  std::filesystem::remove_all(dir);
  auto cfg = ExperimentConfig::from_json(a1_pair("opers"));
  CHECK(write_report(run_pipeline(cfg), dir / "a") == 0);
  CHECK(write_report(run_pipeline(cfg), dir / "b") == 0);
  CHECK(slurp(dir / "a" / "report.json") == slurp(dir / "b" / "report.json"));
  CHECK(std::filesystem::exists(dir / "a" / "monodromy.csv"));
  CHECK(std::filesystem::exists(dir / "a" / "monodromy_distances.csv"));

  auto strict = cfg;
  strict.tol = strict.tol.scaled(1e-12);
  auto r = run_pipeline(strict);
  CHECK_FALSE(r.pass());
  CHECK(write_report(r, dir / "c") == 1);
  for (const auto& c : r.checks)
    if (!c.pass) {
      CHECK_FALSE(c.operation.empty());
      CHECK_FALSE(c.anchor.empty());
    }

  std::ostringstream warn;
  auto files = report_plot(json{{"data", json::object()}}, dir / "c", warn);
  CHECK(files.empty());
  CHECK(warn.str().find("no census section") != std::string::npos);
  std::filesystem::remove_all(dir);
}
