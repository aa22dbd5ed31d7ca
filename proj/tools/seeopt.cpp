// SPDX-License-Identifier: Apache-2.0
//
// seeopt: run experiment configs, print curve sets, run invariant suites.

#include "seeopt/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

namespace {

using namespace seeopt::harness;

int cmd_run(const std::string& config, const std::string& out, int trials, long long seed,
            int threads) {
  ExperimentConfig cfg = load_config(config);
  if (const char* env = std::getenv("SEE_OPT_SEED"); env && seed < 0) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("SEE_OPT_SEED: not an unsigned integer: ") + env);
    }
  }
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
  if (trials > 0) cfg.trials = trials;
  cfg.validate();

  const ExperimentResult res = run_experiment(cfg, threads);
  if (out.empty()) {
    std::cout << format_csv(res.points);
  } else {
    emit_csv(res.points, out);
  }
  if (res.skipped > 0) {
    std::cerr << "skipped " << res.skipped << " evaluations\n";
    for (const auto& f : res.failures) std::cerr << "  " << f << "\n";
  }
  return 0;
}

int cmd_curves(const std::string& scenario) {
  const auto sc = scenario_from_string(scenario);
  if (!sc) throw std::invalid_argument("unknown scenario '" + scenario + "'");
  const ExperimentConfig cfg = preset(*sc);
  std::cout << "scenario " << to_string(cfg.scenario) << " (metric " << to_string(cfg.metric)
            << ", nA=" << cfg.nA << " nB=" << cfg.nB << " nE=" << cfg.nE << ")\n";
  for (const auto& id : curve_ids(cfg)) std::cout << "  " << id << "\n";
  return 0;
}

int cmd_validate(const std::string& suite) {
  int failed = 0;
  for (const auto& r : validate_suite(suite)) {
    std::printf("[%s] %s%s%s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.empty() ? "" : "  ", r.detail.c_str());
    if (!r.passed) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-efficient resource allocation for multi-antenna wiretap channels"};
  app.require_subcommand(1);

  std::string config, out;
  int trials = 0, threads = 1;
  long long seed = -1;
  auto* run = app.add_subcommand("run", "Run an experiment config and emit curve CSV");
  run->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output CSV (default: stdout)");
  run->add_option("--trials", trials, "Override the trial count")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Override the seed (also SEE_OPT_SEED)")->check(CLI::NonNegativeNumber);
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string suite = "all";
  auto* val = app.add_subcommand("validate", "Run invariant suites");
  val->add_option("--suite", suite, "Suite")->check(CLI::IsMember(suite_names()));

  std::string scenario;
  auto* curves = app.add_subcommand("curves", "Print the curve set of a scenario");
  curves->add_option("--scenario", scenario, "fig3..fig7 or custom")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(config, out, trials, seed, threads);
    if (*val) return cmd_validate(suite);
    if (*curves) return cmd_curves(scenario);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
