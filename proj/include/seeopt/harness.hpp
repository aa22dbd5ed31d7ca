// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace seeopt::harness {

enum class Scenario { fig3, fig4, fig5, fig6, fig7, custom };
enum class Metric { see, rate, skee };

const char* to_string(Scenario s);
const char* to_string(Metric m);
std::optional<Scenario> scenario_from_string(const std::string& s);

struct ExperimentConfig {
  Scenario scenario = Scenario::custom;
  int nA = 3;
  int nB = 1;
  int nE = 1;
  double sigma_h = 1.0;
  double sigma_g = 1.0;
  double mu = 1.0;
  double Pc = 5.0;
  double Pmin = 0.0;
  std::vector<double> pmax_grid_dbw;  // default: 10 points from -10 to 20 dBW
  int trials = 100;
  std::uint64_t seed = 1;
  double bandwidth_hz = 1e6;
  Metric metric = Metric::see;
  std::vector<double> sigma_h_sweep;  // fig6 only
  /// Recognized keys: saa_count, oracle_resolution, sco_eps, sco_kkt_tol,
  /// sco_max_outer, pg_tol.
  std::map<std::string, double> solver_tols;

  /// Throws std::invalid_argument naming the first violated field.
  void validate() const;
  double tol(const std::string& key, double fallback) const;
};

/// Preset for a scenario with every field filled in.
ExperimentConfig preset(Scenario s);

/// Parses a JSON object. `scenario` selects the preset, the remaining keys
/// override it. Unknown keys, type mismatches and invariant violations throw
/// std::invalid_argument; syntax errors report the line number.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

struct CurvePoint {
  double pmax_dbw = 0.0;
  std::string curve_id;
  double mean = 0.0;
  double std_error = 0.0;
  int trials = 0;
};

struct ExperimentResult {
  std::vector<CurvePoint> points;
  int skipped = 0;  // (trial, grid point, curve) evaluations that threw
  std::vector<std::string> failures;  // first few failure messages
};

/// Curve identifiers produced for a configuration, in output order.
std::vector<std::string> curve_ids(const ExperimentConfig& cfg);

/// Seed of channel draw `trial`; shared by every curve and grid point.
std::uint64_t trial_seed(const ExperimentConfig& cfg, int trial);

/// Runs every (trial, grid point, curve) combination. SEE and SKEE are
/// reported in Mbit/joule (bandwidth scaling), rates in bit/s/Hz. Output is
/// independent of `threads`.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads = 1);

/// Header `pmax_dbw,curve_id,mean,std_error,trials`, 10 significant digits,
/// LF line endings.
std::string format_csv(const std::vector<CurvePoint>& points);
/// Writes format_csv(points) to path; throws std::runtime_error on I/O failure.
void emit_csv(const std::vector<CurvePoint>& points, const std::string& path);

// Invariant suites used by `seeopt validate`.
struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> validate_suite(const std::string& suite);
std::vector<std::string> suite_names();

}  // namespace seeopt::harness
