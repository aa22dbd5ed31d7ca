// SPDX-License-Identifier: Apache-2.0

#include "seeopt/harness.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

using namespace seeopt::harness;

namespace {

std::string error_of(const std::string& json) {
  try {
    parse_config(json);
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

ExperimentConfig small(Scenario s) {
  ExperimentConfig cfg = preset(s);
  cfg.trials = 3;
  cfg.pmax_grid_dbw = {0.0, 10.0};
  cfg.solver_tols["saa_count"] = 50;
  cfg.solver_tols["oracle_resolution"] = 8;
  return cfg;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("scenario names round-trip") {
  for (Scenario s : {Scenario::fig3, Scenario::fig4, Scenario::fig5, Scenario::fig6, Scenario::fig7,
                     Scenario::custom}) {
    CHECK(scenario_from_string(to_string(s)) == s);
  }
  CHECK_FALSE(scenario_from_string("fig9").has_value());
}

TEST_CASE("presets are valid and fill every field") {
  const auto f3 = preset(Scenario::fig3);
  CHECK(f3.nA == 3);
  CHECK(f3.nB == 1);
  CHECK(f3.pmax_grid_dbw.size() == 10);
  CHECK(f3.pmax_grid_dbw.front() == -10.0);
  CHECK(f3.pmax_grid_dbw.back() == 20.0);
  CHECK(preset(Scenario::fig4).metric == Metric::rate);
  const auto f6 = preset(Scenario::fig6);
  CHECK(f6.sigma_h_sweep == std::vector<double>{2.0, 6.0, 10.0});
  for (Scenario s : {Scenario::fig3, Scenario::fig5, Scenario::fig7, Scenario::custom}) {
    CHECK_NOTHROW(preset(s).validate());
  }
}

TEST_CASE("config parsing overrides the preset") {
  const auto cfg = parse_config(R"({"scenario": "fig5", "trials": 7, "seed": 11, "Pc": 2.5})");
  CHECK(cfg.scenario == Scenario::fig5);
  CHECK(cfg.nA == 2);
  CHECK(cfg.trials == 7);
  CHECK(cfg.seed == 11);
  CHECK(cfg.Pc == 2.5);
  CHECK(cfg.tol("sco_eps", 1e-6) == 1e-6);
}

TEST_CASE("config errors name the field or line") {
  CHECK(error_of(R"({"scenario": "fig3", "trials": 0})").find("trials") != std::string::npos);
  CHECK(error_of(R"({"scenario": "fig3", "bogus": 1})").find("bogus") != std::string::npos);
  CHECK(error_of(R"({"scenario": "fig3", "Pc": -1})").find("Pc") != std::string::npos);
  CHECK(error_of(R"({"scenario": "fig3", "nA": "three"})").find("nA") != std::string::npos);
  CHECK(error_of("{\n\"scenario\": \"fig3\",\n\"trials\": ,\n}").find("line 3") != std::string::npos);
  CHECK(error_of(R"({"scenario": "nope"})") != "");
  CHECK_THROWS(load_config("/nonexistent/config.json"));
}

TEST_CASE("curve ids per scenario") {
  CHECK(curve_ids(preset(Scenario::fig3)) ==
        std::vector<std::string>{"see_perfect", "rate_perfect", "see_statistical", "max_power"});
  const auto f6 = curve_ids(preset(Scenario::fig6));
  CHECK(f6.size() == 9);
  CHECK(std::find(f6.begin(), f6.end(), "rel_gap_sh2") != f6.end());
  auto skee = preset(Scenario::custom);
  skee.metric = Metric::skee;
  CHECK(curve_ids(skee) == std::vector<std::string>{"skee_perfect", "skee_statistical", "max_power"});
}

TEST_CASE("trial seeds are paired across curves and distinct across trials") {
  const auto cfg = preset(Scenario::fig3);
  CHECK(trial_seed(cfg, 0) != trial_seed(cfg, 1));
  CHECK(trial_seed(cfg, 5) == trial_seed(cfg, 5));
}

TEST_CASE("run_experiment emits one row per curve and grid point, thread-independent") {
  for (Scenario s : {Scenario::fig3, Scenario::fig5, Scenario::fig6, Scenario::fig7}) {
    const auto cfg = small(s);
    const auto one = run_experiment(cfg, 1);
    const auto four = run_experiment(cfg, 4);
    CHECK(one.points.size() == curve_ids(cfg).size() * cfg.pmax_grid_dbw.size());
    CHECK(one.skipped == 0);
    CHECK(format_csv(one.points) == format_csv(four.points));
    for (const auto& p : one.points) CHECK(p.trials == cfg.trials);
  }
}

TEST_CASE("CSV format") {
  std::vector<CurvePoint> pts{{-10.0, "see_perfect", 0.123456789012345, 0.001, 100}};
  const std::string csv = format_csv(pts);
  CHECK(csv == "pmax_dbw,curve_id,mean,std_error,trials\n-10,see_perfect,0.123456789,0.001,100\n");
  const std::string path = "harness_test_out.csv";
  emit_csv(pts, path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == csv);
  std::remove(path.c_str());
  CHECK_THROWS_AS(emit_csv(pts, "/nonexistent/dir/out.csv"), std::runtime_error);
}

TEST_CASE("validation suites pass") {
  for (const auto& name : {"specfun", "oracles"}) {
    for (const auto& r : validate_suite(name)) {
      INFO(r.name << " " << r.detail);
      CHECK(r.passed);
    }
  }
  CHECK_THROWS_AS(validate_suite("nope"), std::invalid_argument);
}

}  // TEST_SUITE
