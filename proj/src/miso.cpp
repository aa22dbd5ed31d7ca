// SPDX-License-Identifier: Apache-2.0

#include "seeopt/miso.hpp"

#include "seeopt/specfun.hpp"
#include "seeopt/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace seeopt::miso {
namespace {

using linalg::HermitianMatrix;
using linalg::Index;
using model::kLn2;

CVector matched_beam(const CVector& h) {
  const double n = h.norm();
  if (n > 0.0) {
    CVector w = h / n;
    linalg::normalize_phase(w);
    return w;
  }
  CVector w = CVector::Zero(h.size());
  w(0) = 1.0;
  return w;
}

MisoSolution zero_solution(const CVector& h) {
  MisoSolution s;
  s.p_star = 0.0;
  s.w_star = matched_beam(h);
  s.objective = 0.0;
  s.report.status = SolveStatus::zero_clamp;
  return s;
}

SolveStatus status_of(const frac::ScalarOptimum& opt) {
  return opt.at_boundary ? SolveStatus::boundary : SolveStatus::converged;
}

// d/dp [N(p) / (mu p + Pc)] from N and N'.
double ratio_derivative(double n, double dn, double p, const PowerModel& pm) {
  const double d = pm.consumed(p);
  return (dn * d - n * pm.mu) / (d * d);
}

}  // namespace

LambdaGenCoeffs LambdaGenCoeffs::from_channels(const MisoChannelPair& ch) {
  LambdaGenCoeffs k;
  k.g = ch.g().squaredNorm();
  const double gap = linalg::cauchy_schwarz_gap(ch.h(), ch.g());
  if (k.g > 0.0) {
    k.c = std::norm(ch.g().dot(ch.h()));
    k.omega = gap / k.g;
    k.alpha = k.c / k.g - k.g;
  } else {
    k.omega = ch.h().squaredNorm();
  }
  return k;
}

double lambda_gen(const LambdaGenCoeffs& k, double p) {
  if (k.g <= 0.0) return k.omega * p;
  const double f = p / (1.0 + p * k.g);
  const double a = k.alpha * f + k.omega * p;
  const double b = 4.0 * k.g * k.omega * p * f;
  const double r = std::sqrt(a * a + b);
  if (a >= 0.0) return 0.5 * (a + r);
  return b / (2.0 * (r - a));
}

double lambda_gen_derivative(const LambdaGenCoeffs& k, double p) {
  if (k.g <= 0.0) return k.omega;
  const double den = 1.0 + p * k.g;
  const double f = p / den;
  const double df = 1.0 / (den * den);
  const double a = k.alpha * f + k.omega * p;
  const double da = k.alpha * df + k.omega;
  const double b = 4.0 * k.g * k.omega * p * f;
  const double db = 4.0 * k.g * k.omega * (f + p * df);
  const double r = std::sqrt(a * a + b);
  // At p = 0, b ~ 4 g omega p^2, so r ~ p sqrt(da^2 + 4 g omega).
  const double dr = r > 0.0 ? (a * da + 0.5 * db) / r : std::sqrt(da * da + 4.0 * k.g * k.omega);
  if (a >= 0.0) return 0.5 * (da + dr);
  const double s = r - a;
  return (db * s - b * (dr - da)) / (2.0 * s * s);
}

double lambda_key(const MisoChannelPair& ch, double p) {
  const double a = ch.h().squaredNorm();
  const double g = ch.g().squaredNorm();
  const double gap = linalg::cauchy_schwarz_gap(ch.h(), ch.g());
  return p * (a + p * gap) / (1.0 + p * g);
}

double lambda_key_derivative(const MisoChannelPair& ch, double p) {
  const double a = ch.h().squaredNorm();
  const double g = ch.g().squaredNorm();
  const double gap = linalg::cauchy_schwarz_gap(ch.h(), ch.g());
  const double den = 1.0 + p * g;
  return (a + 2.0 * p * gap + p * p * g * gap) / (den * den);
}

double statistical_see_numerator(double h_norm2, double p) {
  return std::log1p(p * h_norm2) - specfun::exp_e1(1.0 / p).value;
}

double statistical_see_numerator_derivative(double h_norm2, double p) {
  // d/dp e^{1/p} E1(1/p) = (p - e^{1/p} E1(1/p)) / p^2
  const double phi = specfun::exp_e1(1.0 / p).value;
  return h_norm2 / (1.0 + p * h_norm2) - (p - phi) / (p * p);
}

double statistical_see_numerator_curvature(double h_norm2, double p) {
  const double z = specfun::z_of_p(p).value;
  const double t = h_norm2 / (1.0 + p * h_norm2);
  return z / (p * p) - t * t;
}

std::vector<double> draw_eve_gains(const CVector& h, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("draw_eve_gains: n_samples must be >= 1");
  const double hn2 = h.squaredNorm();
  std::vector<double> gains(static_cast<std::size_t>(n_samples));
  for (std::size_t i = 0; i < gains.size(); ++i) {
    const linalg::CMatrix g = model::sample_gaussian(h.size(), 1, 1.0, mix_seed(seed, i));
    gains[i] = hn2 > 0.0 ? std::norm(h.dot(g.col(0))) / hn2 : std::norm(g(0, 0));
  }
  return gains;
}

double saa_key_numerator(double h_norm2, std::span<const double> gains, double p) {
  std::vector<double> terms(gains.size());
  for (std::size_t i = 0; i < gains.size(); ++i) {
    terms[i] = std::log1p(p * h_norm2 / (1.0 + p * gains[i]));
  }
  return pairwise_sum(terms) / static_cast<double>(gains.size());
}

double saa_key_numerator_derivative(double h_norm2, std::span<const double> gains, double p) {
  std::vector<double> terms(gains.size());
  for (std::size_t i = 0; i < gains.size(); ++i) {
    const double e = 1.0 + p * gains[i];
    terms[i] = h_norm2 / (e * (e + p * h_norm2));
  }
  return pairwise_sum(terms) / static_cast<double>(gains.size());
}

MisoSolution solve_see_perfect(const MisoChannelPair& ch, const PowerModel& pm) {
  pm.validate();
  const LambdaGenCoeffs k = LambdaGenCoeffs::from_channels(ch);
  frac::ScalarPcProblem prob;
  prob.lo = pm.pmin;
  prob.hi = pm.pmax;
  prob.objective = [&](double p) { return std::log1p(lambda_gen(k, p)) / pm.consumed(p); };
  prob.derivative = [&](double p) {
    const double lam = lambda_gen(k, p);
    return ratio_derivative(std::log1p(lam), lambda_gen_derivative(k, p) / (1.0 + lam), p, pm);
  };
  const frac::ScalarOptimum opt = frac::maximize_scalar_pc(prob);
  if (!(opt.value > 0.0) || opt.p_star <= 0.0) return zero_solution(ch.h());

  const Index n = ch.n_tx();
  const HermitianMatrix a = HermitianMatrix::identity(n) + HermitianMatrix::outer(ch.h()) * opt.p_star;
  const HermitianMatrix b = HermitianMatrix::identity(n) + HermitianMatrix::outer(ch.g()) * opt.p_star;
  MisoSolution s;
  s.p_star = opt.p_star;
  s.w_star = linalg::gen_max_eigpair(a, b).vector;
  s.objective = model::miso_secrecy_rate(ch, s.p_star, s.w_star) / pm.consumed(s.p_star);
  if (!(s.objective > 0.0)) return zero_solution(ch.h());
  s.report.status = status_of(opt);
  s.report.objective_trace = {s.objective};
  return s;
}

MisoSolution solve_skee_perfect(const MisoChannelPair& ch, const PowerModel& pm) {
  pm.validate();
  frac::ScalarPcProblem prob;
  prob.lo = pm.pmin;
  prob.hi = pm.pmax;
  prob.objective = [&](double p) { return std::log1p(lambda_key(ch, p)) / pm.consumed(p); };
  prob.derivative = [&](double p) {
    const double lam = lambda_key(ch, p);
    return ratio_derivative(std::log1p(lam), lambda_key_derivative(ch, p) / (1.0 + lam), p, pm);
  };
  const frac::ScalarOptimum opt = frac::maximize_scalar_pc(prob);
  if (!(opt.value > 0.0) || opt.p_star <= 0.0) return zero_solution(ch.h());

  const Index n = ch.n_tx();
  const HermitianMatrix a = HermitianMatrix::outer(ch.h()) * opt.p_star;
  const HermitianMatrix b = HermitianMatrix::identity(n) + HermitianMatrix::outer(ch.g()) * opt.p_star;
  MisoSolution s;
  s.p_star = opt.p_star;
  s.w_star = linalg::gen_max_eigpair(a, b).vector;
  s.objective = model::miso_secret_key_rate(ch, s.p_star, s.w_star) / pm.consumed(s.p_star);
  if (!(s.objective > 0.0)) return zero_solution(ch.h());
  s.report.status = status_of(opt);
  s.report.objective_trace = {s.objective};
  return s;
}

MisoSolution solve_see_statistical(const CVector& h, const PowerModel& pm) {
  pm.validate();
  const double a = h.squaredNorm();
  if (!(a > 0.0)) return zero_solution(h);

  const double lo = std::min(std::max(pm.pmin, kCertificateFloor), 0.5 * pm.pmax);
  const auto objective = [&](double p) { return statistical_see_numerator(a, p) / pm.consumed(p); };
  const specfun::SpecFunEval threshold = specfun::y_of_p(lo);
  const bool certified = !threshold.degenerate && a > threshold.value;

  double p_best = lo;
  double v_best = objective(lo);
  SolveStatus status = SolveStatus::converged;
  if (certified) {
    frac::ScalarPcProblem prob;
    prob.lo = lo;
    prob.hi = pm.pmax;
    prob.objective = objective;
    prob.derivative = [&](double p) {
      return ratio_derivative(statistical_see_numerator(a, p),
                              statistical_see_numerator_derivative(a, p), p, pm);
    };
    const frac::ScalarOptimum opt = frac::maximize_scalar_pc(prob);
    p_best = opt.p_star;
    v_best = opt.value;
    status = status_of(opt);
  } else {
    const double step = std::log(pm.pmax / lo) / (kFallbackGridPoints - 1);
    for (int i = 0; i < kFallbackGridPoints; ++i) {
      const double p = i + 1 == kFallbackGridPoints ? pm.pmax : lo * std::exp(step * i);
      const double v = objective(p);
      if (v > v_best) {
        v_best = v;
        p_best = p;
      }
    }
    status = SolveStatus::grid_fallback;
  }
  if (!(v_best > 0.0)) {
    MisoSolution s = zero_solution(h);
    s.report.certified = certified;
    return s;
  }
  MisoSolution s;
  s.p_star = p_best;
  s.w_star = matched_beam(h);
  s.objective = v_best / kLn2;
  s.report.status = status;
  s.report.certified = certified;
  s.report.objective_trace = {s.objective};
  return s;
}

MisoSolution solve_skee_statistical(const CVector& h, const PowerModel& pm, int n_samples,
                                    std::uint64_t seed) {
  if (n_samples < 1000) {
    throw std::invalid_argument("solve_skee_statistical: n_samples must be >= 1000");
  }
  const std::vector<double> gains = draw_eve_gains(h, n_samples, seed);
  return solve_skee_statistical(h, pm, gains);
}

MisoSolution solve_skee_statistical(const CVector& h, const PowerModel& pm,
                                    std::span<const double> gains) {
  pm.validate();
  if (gains.empty()) throw std::invalid_argument("solve_skee_statistical: empty sample set");
  const double a = h.squaredNorm();
  if (!(a > 0.0)) return zero_solution(h);
  frac::ScalarPcProblem prob;
  prob.lo = pm.pmin;
  prob.hi = pm.pmax;
  prob.objective = [&](double p) { return saa_key_numerator(a, gains, p) / pm.consumed(p); };
  prob.derivative = [&](double p) {
    return ratio_derivative(saa_key_numerator(a, gains, p),
                            saa_key_numerator_derivative(a, gains, p), p, pm);
  };
  const frac::ScalarOptimum opt = frac::maximize_scalar_pc(prob);
  if (!(opt.value > 0.0) || opt.p_star <= 0.0) return zero_solution(h);
  MisoSolution s;
  s.p_star = opt.p_star;
  s.w_star = matched_beam(h);
  s.objective = opt.value / kLn2;
  s.report.status = status_of(opt);
  s.report.objective_trace = {s.objective};
  return s;
}

}  // namespace seeopt::miso
