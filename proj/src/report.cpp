// SPDX-License-Identifier: Apache-2.0

#include "seeopt/report.hpp"

namespace seeopt {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::boundary: return "boundary";
    case SolveStatus::zero_clamp: return "zero_clamp";
    case SolveStatus::grid_fallback: return "grid_fallback";
    case SolveStatus::iteration_cap: return "iteration_cap";
  }
  return "unknown";
}

}  // namespace seeopt
