// SPDX-License-Identifier: Apache-2.0

#include "seeopt/fracprog.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace seeopt::frac;

namespace {

double dense_max(const std::function<double(double)>& f, double lo, double hi, int n) {
  double best = -INFINITY;
  for (int i = 0; i <= n; ++i) best = std::max(best, f(lo + (hi - lo) * i / n));
  return best;
}

RatioProblem<double> quadratic_ratio() {
  RatioProblem<double> prob;
  prob.numerator = [](double x) { return 4.0 - (x - 2.0) * (x - 2.0); };
  prob.denominator = [](double x) { return x + 1.0; };
  prob.maximize_auxiliary = [](double beta) { return std::clamp(2.0 - beta / 2.0, 0.0, 10.0); };
  return prob;
}

}  // namespace

TEST_SUITE("fracprog") {

TEST_CASE("Dinkelbach reaches the ratio optimum of a concave-over-affine problem") {
  reset_dinkelbach_tally();
  const auto prob = quadratic_ratio();
  const auto rep = dinkelbach(prob);
  const double ref = dense_max([&](double x) { return prob.numerator(x) / prob.denominator(x); },
                               0.0, 10.0, 2000000);
  CHECK(rep.termination == Termination::converged);
  CHECK(rep.beta_star == doctest::Approx(ref).epsilon(1e-10));
  CHECK(rep.beta_monotone());
  CHECK(std::abs(rep.terminal_F()) < 1e-8);
  CHECK(rep.iterations <= 10);
  for (std::size_t k = 1; k < rep.beta_history.size(); ++k) {
    CHECK(rep.beta_history[k] >= rep.beta_history[k - 1]);
  }
  const auto tally = dinkelbach_tally();
  CHECK(tally.runs == 1);
  CHECK(tally.non_monotone == 0);
  CHECK(tally.max_iterations == rep.iterations);
}

TEST_CASE("Dinkelbach iteration cap and inexact inner solver are reported") {
  const auto prob = quadratic_ratio();
  DinkelbachOptions opt;
  opt.max_iter = 1;
  opt.tol = 1e-15;
  CHECK(dinkelbach(prob, opt).termination == Termination::iteration_cap);

  auto sloppy = prob;
  int calls = 0;
  sloppy.maximize_auxiliary = [&](double beta) {
    return ++calls == 1 ? std::clamp(2.0 - beta / 2.0, 0.0, 10.0) : 9.0;
  };
  const auto rep = dinkelbach(sloppy);
  CHECK(rep.termination == Termination::inexact_inner);
  // The previous iterate is returned.
  CHECK(rep.x_star == doctest::Approx(2.0));
}

TEST_CASE("Dinkelbach rejects a non-positive denominator") {
  auto prob = quadratic_ratio();
  prob.denominator = [](double) { return 0.0; };
  CHECK_THROWS_AS(dinkelbach(prob), std::runtime_error);
}

TEST_CASE("tally reset") {
  dinkelbach(quadratic_ratio());
  reset_dinkelbach_tally();
  CHECK(dinkelbach_tally().runs == 0);
}

TEST_CASE("maximize_scalar_pc interior optimum") {
  ScalarPcProblem prob;
  prob.objective = [](double p) { return std::log1p(5.0 * p) / (p + 5.0); };
  prob.derivative = [](double p) {
    return (5.0 / (1.0 + 5.0 * p) * (p + 5.0) - std::log1p(5.0 * p)) / ((p + 5.0) * (p + 5.0));
  };
  prob.lo = 0.0;
  prob.hi = 100.0;
  const auto r = maximize_scalar_pc(prob);
  CHECK_FALSE(r.at_boundary);
  const double ref = dense_max(prob.objective, 0.0, 100.0, 2000000);
  CHECK(r.value >= ref - 1e-12);
  CHECK(std::abs(prob.derivative(r.p_star)) < 1e-10);
}

TEST_CASE("maximize_scalar_pc boundary optima") {
  ScalarPcProblem up;
  up.objective = [](double p) { return p; };
  up.derivative = [](double) { return 1.0; };
  up.lo = 0.5;
  up.hi = 2.0;
  auto r = maximize_scalar_pc(up);
  CHECK(r.at_boundary);
  CHECK(r.p_star == 2.0);
  ScalarPcProblem down = up;
  down.objective = [](double p) { return -p; };
  down.derivative = [](double) { return -1.0; };
  r = maximize_scalar_pc(down);
  CHECK(r.at_boundary);
  CHECK(r.p_star == 0.5);
}

}  // TEST_SUITE
