// SPDX-License-Identifier: Apache-2.0

#include "seeopt/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace seeopt::specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kTiny = 1e-300;
constexpr int kMaxTerms = 20000;
constexpr double kSeriesCrossover = 1.0;

void require_positive(double x, const char* what) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::domain_error(std::string(what) + ": argument must be finite and > 0, got " +
                            std::to_string(x));
  }
}

// E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
SpecFunEval exp_e1_series(double x) {
  double term = 1.0;
  double sum = 0.0;
  double abs_sum = 0.0;
  double last = 0.0;
  for (int k = 1; k < kMaxTerms; ++k) {
    term *= -x / k;
    last = term / k;
    sum += last;
    abs_sum += std::abs(last);
    if (std::abs(last) < kEps * std::abs(sum) * 0.25) break;
  }
  const double e1 = -kEulerGamma - std::log(x) - sum;
  const double ex = std::exp(x);
  SpecFunEval out;
  out.value = ex * e1;
  out.abs_err_bound =
      ex * (4.0 * kEps * (kEulerGamma + std::abs(std::log(x)) + abs_sum) + std::abs(last)) +
      2.0 * kEps * std::abs(out.value);
  return out;
}

// Lentz evaluation of V = b2 + a3/(b3 + a4/(b4 + ...)) with a_i = -i^2 and
// b_i = x + 2i + 1, i.e. the tail of
//   e^x E1(x) = 1/(x+1 - 1/(x+3 - 4/(x+5 - 9/(x+7 - ...)))).
struct Tail {
  double value;
  double rel_err;
};

Tail cf_tail(double x) {
  double f = x + 5.0;
  double c = f;
  double d = 0.0;
  double delta = 0.0;
  for (int i = 3; i < kMaxTerms; ++i) {
    const double a = -static_cast<double>(i) * i;
    const double b = x + 2.0 * i + 1.0;
    d = b + a * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + a / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return {f, std::abs(delta - 1.0) + 16.0 * kEps};
}

struct CfParts {
  double s;        // 4 / V
  double t;        // 1 / (x + 3 - s)
  double denom;    // x + 1 - t
  double rel_err;
};

CfParts cf_parts(double x) {
  const Tail tail = cf_tail(x);
  CfParts p{};
  p.s = 4.0 / tail.value;
  p.t = 1.0 / (x + 3.0 - p.s);
  p.denom = x + 1.0 - p.t;
  p.rel_err = tail.rel_err + 8.0 * kEps;
  return p;
}

}  // namespace

SpecFunEval exp_e1(double x) {
  require_positive(x, "exp_e1");
  if (x <= kSeriesCrossover) return exp_e1_series(x);
  const CfParts cf = cf_parts(x);
  SpecFunEval out;
  out.value = 1.0 / cf.denom;
  out.abs_err_bound = out.value * cf.rel_err;
  return out;
}

SpecFunEval one_minus_z_of_p(double p) {
  require_positive(p, "one_minus_z_of_p");
  const double x = 1.0 / p;
  SpecFunEval out;
  if (x <= kSeriesCrossover) {
    // 1 - z = x ((x + 2) e^x E1(x) - 1)
    const SpecFunEval e = exp_e1_series(x);
    const double inner = (x + 2.0) * e.value - 1.0;
    out.value = x * inner;
    out.abs_err_bound = x * ((x + 2.0) * e.abs_err_bound + 4.0 * kEps * ((x + 2.0) * e.value + 1.0));
    return out;
  }
  const CfParts cf = cf_parts(x);
  const double z = (2.0 - cf.s) / ((x + 3.0 - cf.s) * cf.denom);
  out.value = 1.0 - z;
  out.abs_err_bound = 4.0 * cf.rel_err * z + kEps;
  return out;
}

SpecFunEval z_of_p(double p) {
  require_positive(p, "z_of_p");
  const double x = 1.0 / p;
  SpecFunEval out;
  if (x <= kSeriesCrossover) {
    const SpecFunEval omz = one_minus_z_of_p(p);
    out.value = 1.0 - omz.value;
    out.abs_err_bound = omz.abs_err_bound + kEps;
  } else {
    const CfParts cf = cf_parts(x);
    out.value = (2.0 - cf.s) / ((x + 3.0 - cf.s) * cf.denom);
    out.abs_err_bound = 4.0 * cf.rel_err * std::abs(out.value);
  }
  if (out.value < 0.0 && -out.value <= out.abs_err_bound) out.value = 0.0;
  if (out.value > 1.0 && out.value - 1.0 <= out.abs_err_bound) out.value = 1.0;
  return out;
}

SpecFunEval y_of_p(double p) {
  require_positive(p, "y_of_p");
  const SpecFunEval z = z_of_p(p);
  const SpecFunEval omz = one_minus_z_of_p(p);
  SpecFunEval out;
  if (!(omz.value > omz.abs_err_bound)) {
    out.value = std::numeric_limits<double>::max();
    out.abs_err_bound = 0.0;
    out.degenerate = true;
    return out;
  }
  const double root = std::sqrt(std::max(z.value, 0.0));
  const double denom = p * omz.value;
  out.value = (z.value + root) / denom;
  const double droot = root > 0.0 ? 0.5 * z.abs_err_bound / root : std::sqrt(z.abs_err_bound);
  out.abs_err_bound = (z.abs_err_bound + droot) / denom +
                      out.value * omz.abs_err_bound / omz.value + 4.0 * kEps * out.value;
  return out;
}

}  // namespace seeopt::specfun
