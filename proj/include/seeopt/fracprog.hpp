// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seeopt::frac {

/// max_x f(x) / g(x) with g > 0. `maximize_auxiliary(beta)` must return a
/// global maximizer of f(x) - beta * g(x) over the feasible set.
template <class X>
struct RatioProblem {
  std::function<double(const X&)> numerator;
  std::function<double(const X&)> denominator;
  std::function<X(double beta)> maximize_auxiliary;
};

enum class Termination {
  converged,
  iteration_cap,
  inexact_inner,  // the auxiliary maximizer returned F < -tol after the first step
};

const char* to_string(Termination t);

struct DinkelbachOptions {
  double tol = 1e-8;
  int max_iter = 50;
  double beta0 = 0.0;
};

/// Compact record of one run, kept by solvers that call dinkelbach
/// repeatedly.
struct DinkelbachSummary {
  int iterations = 0;
  double terminal_F = 0.0;
  bool beta_monotone = true;
  Termination termination = Termination::converged;
};

/// Process-wide tally of every dinkelbach() run (thread-safe).
struct DinkelbachTally {
  long long runs = 0;
  long long non_monotone = 0;
  long long not_converged = 0;  // termination other than `converged`
  int max_iterations = 0;
  double max_abs_terminal_F = 0.0;
};

void record_run(const DinkelbachSummary& s);
DinkelbachTally dinkelbach_tally();
void reset_dinkelbach_tally();

template <class X>
struct DinkelbachReport {
  double beta_star = 0.0;
  X x_star{};
  int iterations = 0;
  std::vector<double> F_history;     // F(beta_k) = f(x_k) - beta_k g(x_k)
  std::vector<double> beta_history;  // ratios f(x_k) / g(x_k)
  Termination termination = Termination::converged;

  double terminal_F() const { return F_history.empty() ? 0.0 : F_history.back(); }
  bool beta_monotone() const {
    for (std::size_t i = 1; i < beta_history.size(); ++i) {
      if (beta_history[i] < beta_history[i - 1]) return false;
    }
    return true;
  }
  DinkelbachSummary summary() const { return {iterations, terminal_F(), beta_monotone(), termination}; }
};

/// Dinkelbach's iteration started from beta0. When beta0 already exceeds the
/// optimal ratio (negative optimum), the first ratio resets beta and the
/// iteration proceeds upward from there. If a later auxiliary solve reports
/// F < 0 (round-off or an inexact inner solver) the previous iterate is
/// returned so that beta_star = f(x_star) / g(x_star) always holds.
template <class X>
DinkelbachReport<X> dinkelbach(const RatioProblem<X>& prob, const DinkelbachOptions& opt = {}) {
  DinkelbachReport<X> rep;
  double beta = opt.beta0;
  bool have_prev = false;
  for (int k = 1; k <= opt.max_iter; ++k) {
    X x = prob.maximize_auxiliary(beta);
    const double f = prob.numerator(x);
    const double g = prob.denominator(x);
    if (!std::isfinite(f) || !std::isfinite(g)) {
      throw std::runtime_error("dinkelbach: non-finite numerator or denominator");
    }
    if (!(g > 0.0)) throw std::runtime_error("dinkelbach: denominator must be positive");
    const double F = f - beta * g;
    rep.iterations = k;
    rep.F_history.push_back(F);
    if (F < 0.0 && have_prev) {
      // beta already is the ratio of the previous iterate.
      rep.termination = F > -opt.tol ? Termination::converged : Termination::inexact_inner;
      record_run(rep.summary());
      return rep;
    }
    const double ratio = f / g;
    if (have_prev && ratio < beta && F < opt.tol) {
      // F >= 0 but f / g rounded below beta: no improvement, keep the previous iterate.
      rep.termination = Termination::converged;
      record_run(rep.summary());
      return rep;
    }
    rep.beta_star = ratio;
    rep.x_star = std::move(x);
    rep.beta_history.push_back(ratio);
    if (std::abs(F) < opt.tol) {
      rep.termination = Termination::converged;
      record_run(rep.summary());
      return rep;
    }
    beta = ratio;
    have_prev = true;
  }
  rep.termination = Termination::iteration_cap;
  record_run(rep.summary());
  return rep;
}

/// Scalar objective that is strictly pseudo-concave on [lo, hi].
struct ScalarPcProblem {
  std::function<double(double)> objective;
  std::function<double(double)> derivative;
  double lo = 0.0;
  double hi = 1.0;
};

struct ScalarOptimum {
  double p_star = 0.0;
  double value = 0.0;
  bool at_boundary = false;
};

/// Maximizes a strictly pseudo-concave scalar function by bisection on the
/// sign of its derivative. Returns hi when the derivative is non-negative at
/// hi, lo when it is non-positive at lo, otherwise the unique sign change
/// located to width <= tol * max(1, |hi|).
ScalarOptimum maximize_scalar_pc(const ScalarPcProblem& prob, double tol = 1e-13);

}  // namespace seeopt::frac
