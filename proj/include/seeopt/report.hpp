// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "seeopt/fracprog.hpp"

#include <vector>

namespace seeopt {

enum class SolveStatus {
  converged,      // interior stationary point or converged outer loop
  boundary,       // optimum on a power-budget boundary
  zero_clamp,     // no positive objective exists; reported as zero power
  grid_fallback,  // pseudo-concavity not certified, fine grid used instead
  iteration_cap,
};

const char* to_string(SolveStatus s);

/// Optimizer bookkeeping shared by every solver.
struct SolveReport {
  SolveStatus status = SolveStatus::converged;
  int outer_iterations = 0;
  int inner_iterations = 0;
  std::vector<double> objective_trace;  // true objective after each outer step
  double kkt_residual = 0.0;
  bool certified = true;
  std::vector<frac::DinkelbachSummary> dinkelbach_runs;
};

}  // namespace seeopt
