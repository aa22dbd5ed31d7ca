// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace seeopt::specfun {

/// Result of a special-function evaluation together with a rigorous-ish
/// absolute error bound. `degenerate` marks sentinel results (see y_of_p).
struct SpecFunEval {
  double value = 0.0;
  double abs_err_bound = 0.0;
  bool degenerate = false;
};

/// e^x * E1(x) for x > 0, evaluated as a fused product so the result stays
/// finite for large x. Power series below x = 1, continued fraction above.
/// Throws std::domain_error for x <= 0 or non-finite x.
SpecFunEval exp_e1(double x);

/// z(p) = 1 + 1/p - (1/p^2 + 2/p) e^{1/p} E1(1/p), which lies in [0, 1].
/// For p < 1 the cancelling terms are folded into the continued fraction
/// tail, so the small-p regime (where z ~ 2p^2) keeps full relative accuracy.
SpecFunEval z_of_p(double p);

/// 1 - z(p), computed without forming z first.
SpecFunEval one_minus_z_of_p(double p);

/// y(p) = (z + sqrt(z)) / (p (1 - z)).
/// When 1 - z(p) is not resolvable from zero the result is a finite sentinel
/// (numeric_limits<double>::max()) with `degenerate` set; it never throws for
/// p > 0.
SpecFunEval y_of_p(double p);

}  // namespace seeopt::specfun
