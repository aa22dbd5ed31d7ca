// SPDX-License-Identifier: Apache-2.0

#include "seeopt/fracprog.hpp"

#include <algorithm>
#include <mutex>

namespace seeopt::frac {
namespace {

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw std::runtime_error(std::string("maximize_scalar_pc: non-finite ") + what);
  return v;
}

std::mutex g_tally_mutex;
DinkelbachTally g_tally;

}  // namespace

void record_run(const DinkelbachSummary& s) {
  std::lock_guard<std::mutex> lock(g_tally_mutex);
  ++g_tally.runs;
  if (!s.beta_monotone) ++g_tally.non_monotone;
  if (s.termination != Termination::converged) ++g_tally.not_converged;
  g_tally.max_iterations = std::max(g_tally.max_iterations, s.iterations);
  g_tally.max_abs_terminal_F = std::max(g_tally.max_abs_terminal_F, std::abs(s.terminal_F));
}

DinkelbachTally dinkelbach_tally() {
  std::lock_guard<std::mutex> lock(g_tally_mutex);
  return g_tally;
}

void reset_dinkelbach_tally() {
  std::lock_guard<std::mutex> lock(g_tally_mutex);
  g_tally = DinkelbachTally{};
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::iteration_cap: return "iteration_cap";
    case Termination::inexact_inner: return "inexact_inner";
  }
  return "unknown";
}

ScalarOptimum maximize_scalar_pc(const ScalarPcProblem& prob, double tol) {
  if (!(prob.lo < prob.hi)) throw std::invalid_argument("maximize_scalar_pc: need lo < hi");
  const auto at = [&](double p, bool boundary) {
    return ScalarOptimum{p, checked(prob.objective(p), "objective"), boundary};
  };
  if (checked(prob.derivative(prob.hi), "derivative") >= 0.0) return at(prob.hi, true);
  if (checked(prob.derivative(prob.lo), "derivative") <= 0.0) return at(prob.lo, true);
  double lo = prob.lo;
  double hi = prob.hi;
  const double width = tol * std::max(1.0, std::abs(prob.hi));
  for (int it = 0; it < 400 && hi - lo > width; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (checked(prob.derivative(mid), "derivative") > 0.0) lo = mid;
    else hi = mid;
  }
  return at(0.5 * (lo + hi), false);
}

}  // namespace seeopt::frac
