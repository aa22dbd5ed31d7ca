// SPDX-License-Identifier: Apache-2.0

#include "seeopt/mimo.hpp"

#include "seeopt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace seeopt::mimo {
namespace {

using model::kLn2;

constexpr int kBisectionSteps = 200;

MimoSolution zero_solution(Index n) {
  MimoSolution s;
  s.Q_star = TransmitCovariance::zero(n);
  s.objective = 0.0;
  s.report.status = SolveStatus::zero_clamp;
  return s;
}

SolveStatus status_for(const HermitianMatrix& q, const PowerModel& pm) {
  return std::abs(q.trace() - pm.pmax) <= 1e-9 * pm.pmax ? SolveStatus::boundary
                                                         : SolveStatus::converged;
}

// Q = B X B with B = A^{-1/2}, X the water-filling solution for
// K = B H^H H B.
HermitianMatrix whitened_waterfill(const CMatrix& hh, const linalg::EigenDecomposition& m0,
                                   double shift) {
  const Index n = hh.rows();
  linalg::RVector inv_sqrt(n);
  for (Index i = 0; i < n; ++i) inv_sqrt(i) = 1.0 / std::sqrt(m0.values(i) + shift);
  const CMatrix b = m0.vectors * inv_sqrt.asDiagonal() * m0.vectors.adjoint();
  const auto kev = linalg::herm_evd(HermitianMatrix(b * hh * b));
  linalg::RVector x(n);
  for (Index i = 0; i < n; ++i) {
    const double k = kev.values(i);
    x(i) = k > 1.0 ? 1.0 - 1.0 / k : 0.0;
  }
  const CMatrix xm = kev.vectors * x.asDiagonal() * kev.vectors.adjoint();
  return HermitianMatrix(b * xm * b);
}

double logdet_plus_lowrank(const CMatrix& g, const RVector& q) {
  CMatrix m = g * q.asDiagonal() * g.adjoint();
  m.diagonal().array() += 1.0;
  Eigen::LLT<CMatrix> llt(m);
  if (llt.info() != Eigen::Success) {
    return linalg::logdet_identity_plus(HermitianMatrix(g * q.asDiagonal() * g.adjoint()));
  }
  return 2.0 * llt.matrixLLT().diagonal().real().array().log().sum();
}

struct RatioRun {
  HermitianMatrix x;
  double ratio = 0.0;  // nats/joule
  frac::DinkelbachSummary summary;
  int inner_iterations = 0;
};

// Dinkelbach over {Q >= 0, tr Q <= pmax} for f / (mu tr Q + Pc), f concave.
RatioRun pg_dinkelbach(const LogDetDifference& f, const PowerModel& pm, const PgOptions& pg) {
  const Index n = f.dim();
  HermitianMatrix warm = HermitianMatrix::identity(n) * (pm.pmax / (2.0 * static_cast<double>(n)));
  int inner = 0;
  frac::RatioProblem<HermitianMatrix> prob;
  prob.numerator = [&](const HermitianMatrix& x) { return f.value(x.matrix()); };
  prob.denominator = [&](const HermitianMatrix& x) { return pm.consumed(x.trace()); };
  prob.maximize_auxiliary = [&](double beta) {
    PgResult r = maximize_concave_psd(f, beta * pm.mu, pm.pmax, warm, pg);
    inner += r.iterations;
    warm = r.q;
    return r.q;
  };
  auto rep = frac::dinkelbach(prob);
  RatioRun out;
  out.x = rep.x_star;
  out.ratio = rep.beta_star;
  out.summary = rep.summary();
  out.inner_iterations = inner;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

HermitianMatrix inner_concave_psd(const CMatrix& h, const HermitianMatrix& m0, double beta,
                                  const PowerModel& pm) {
  const Index n = h.cols();
  if (m0.dim() != n) throw std::invalid_argument("inner_concave_psd: M0 dimension mismatch");
  const CMatrix hh = h.adjoint() * h;
  const double hmax = linalg::herm_evd(HermitianMatrix(hh)).values(0);
  if (!(hmax > 0.0)) return HermitianMatrix::zero(n);

  const auto m0ev = linalg::herm_evd(m0);
  const double cmin = m0ev.values(n - 1) + beta * pm.mu;
  const double nu_lo = std::max(0.0, -cmin);
  const double scale = std::max(1.0, std::abs(m0ev.values(0)) + std::abs(beta * pm.mu));
  auto solve_at = [&](double nu) { return whitened_waterfill(hh, m0ev, beta * pm.mu + nu); };

  if (cmin + nu_lo > 1e-12 * scale) {
    HermitianMatrix q = solve_at(nu_lo);
    if (q.trace() <= pm.pmax) return q;
  }
  double lo = nu_lo;
  double hi = nu_lo + hmax;
  HermitianMatrix best = solve_at(hi);
  for (int it = 0; it < kBisectionSteps && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    HermitianMatrix q = solve_at(mid);
    if (q.trace() <= pm.pmax) {
      hi = mid;
      best = std::move(q);
    } else {
      lo = mid;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

void LogDetDifference::add(const HermitianMatrix& plus, const HermitianMatrix& minus) {
  if (plus.dim() != minus.dim() || (!terms_.empty() && plus.dim() != dim())) {
    throw std::invalid_argument("LogDetDifference: dimension mismatch");
  }
  terms_.emplace_back(linalg::LogDetForm(plus), linalg::LogDetForm(minus));
}

Index LogDetDifference::dim() const { return terms_.empty() ? 0 : terms_.front().first.dim(); }

double LogDetDifference::value(const CMatrix& q) const {
  if (terms_.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& [p, m] : terms_) acc += p.value(q) - m.value(q);
  return acc / static_cast<double>(terms_.size());
}

double LogDetDifference::value_and_gradient(const CMatrix& q, CMatrix& grad) const {
  const Index n = q.rows();
  grad = CMatrix::Zero(n, n);
  if (terms_.empty()) return 0.0;
  double acc = 0.0;
  CMatrix gp, gm;
  for (const auto& [p, m] : terms_) {
    acc += p.value_and_gradient(q, gp) - m.value_and_gradient(q, gm);
    grad += gp - gm;
  }
  const double inv = 1.0 / static_cast<double>(terms_.size());
  grad *= inv;
  return acc * inv;
}

PgResult maximize_concave_psd(const LogDetDifference& f, double linear_cost, double budget,
                              const HermitianMatrix& init, const PgOptions& opt) {
  const Index n = f.dim();
  if (init.dim() != n) throw std::invalid_argument("maximize_concave_psd: init dimension mismatch");
  auto eval = [&](const CMatrix& x, CMatrix& g) {
    const double v = f.value_and_gradient(x, g) - linear_cost * x.trace().real();
    g.diagonal().array() -= linear_cost;
    g = linalg::hermitian_part(g);
    return v;
  };
  auto project = [&](const CMatrix& a) {
    return linalg::project_psd_trace(HermitianMatrix(a), budget).matrix();
  };

  CMatrix x = project(init.matrix());
  CMatrix g;
  double v = eval(x, g);
  double step = 1.0 / std::max(1.0, g.norm());

  PgResult res;
  for (int it = 0; it < opt.max_iter; ++it) {
    res.iterations = it;
    const CMatrix p1 = project(x + g) - x;
    res.pg_norm = p1.norm();
    if (res.pg_norm <= opt.tol * (1.0 + std::abs(v))) {
      res.converged = true;
      break;
    }
    CMatrix d = project(x + step * g) - x;
    double slope = linalg::inner(g, d);
    if (!(slope > 0.0)) {
      d = p1;
      slope = linalg::inner(g, d);
      if (!(slope > 0.0)) break;
    }
    double t = 1.0;
    CMatrix xt, gt;
    double vt = 0.0;
    bool accepted = false;
    // Predicted gains below round-off in v cannot be checked by Armijo.
    if (slope <= 1e-13 * (1.0 + std::abs(v)) && d.norm() <= 1e-6 * (1.0 + x.norm())) {
      xt = x + d;
      vt = eval(xt, gt);
      accepted = true;
    }
    for (int ls = 0; !accepted && ls < 60; ++ls) {
      xt = x + t * d;
      vt = eval(xt, gt);
      if (vt >= v + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    const CMatrix s = xt - x;
    const CMatrix y = gt - g;
    const double sy = -linalg::inner(s, y);
    const double ss = linalg::inner(s, s);
    step = sy > 0.0 ? std::clamp(ss / sy, 1e-12, 1e12) : std::min(step * 2.0, 1e12);
    x = std::move(xt);
    g = std::move(gt);
    v = vt;
    res.iterations = it + 1;
  }
  if (!res.converged) {
    res.pg_norm = (project(x + g) - x).norm();
    res.converged = res.pg_norm <= opt.tol * (1.0 + std::abs(v));
  }
  res.q = HermitianMatrix(x);
  res.objective = v;
  return res;
}

// ---------------------------------------------------------------------------

SeeSurrogate::SeeSurrogate(const MimoChannelPair& ch, const HermitianMatrix& q0)
    : bob_(HermitianMatrix::gram(ch.H())), q0_(q0) {
  if (q0.dim() != ch.n_tx()) throw std::invalid_argument("SeeSurrogate: Q0 dimension mismatch");
  linalg::LogDetForm eve(HermitianMatrix::gram(ch.G()));
  CMatrix grad;
  g0_ = eve.value_and_gradient(q0.matrix(), grad);
  m0_ = HermitianMatrix(grad);
}

double SeeSurrogate::numerator(const HermitianMatrix& q) const {
  return bob_.value(q.matrix()) - g0_ - linalg::inner(m0_.matrix(), (q - q0_).matrix());
}

MimoSolution solve_see_perfect_sco(const MimoChannelPair& ch, const PowerModel& pm,
                                   const std::optional<TransmitCovariance>& q_init,
                                   const ScoOptions& opt) {
  pm.validate();
  const Index n = ch.n_tx();
  HermitianMatrix q0 = q_init ? q_init->hermitian()
                              : HermitianMatrix::identity(n) * (pm.pmax / (2.0 * n));
  if (q0.dim() != n) throw std::invalid_argument("solve_see_perfect_sco: Q_init dimension mismatch");
  TransmitCovariance(q0).check_budget(pm);

  MimoSolution sol;
  auto true_see = [&](const HermitianMatrix& q) { return model::see(ch, TransmitCovariance(q), pm); };
  double prev = true_see(q0);
  sol.report.objective_trace.push_back(prev);
  bool done = false;
  for (int outer = 1; outer <= opt.max_outer; ++outer) {
    SeeSurrogate sur(ch, q0);
    frac::RatioProblem<HermitianMatrix> prob;
    prob.numerator = [&](const HermitianMatrix& q) { return sur.numerator(q); };
    prob.denominator = [&](const HermitianMatrix& q) { return pm.consumed(q.trace()); };
    prob.maximize_auxiliary = [&](double beta) {
      return inner_concave_psd(ch.H(), sur.m0(), beta, pm);
    };
    auto rep = frac::dinkelbach(prob, opt.dinkelbach);
    sol.report.dinkelbach_runs.push_back(rep.summary());
    sol.report.inner_iterations += rep.iterations;
    sol.report.outer_iterations = outer;
    const double cur = true_see(rep.x_star);
    sol.report.objective_trace.push_back(cur);
    // A step can only fail to improve through round-off; keep the better point.
    const double step = std::abs(cur - prev);
    if (cur >= prev) q0 = rep.x_star;
    prev = std::max(cur, prev);
    if (step <= opt.eps && (opt.kkt_tol <= 0.0 || see_kkt_residual(ch, pm, q0) <= opt.kkt_tol)) {
      done = true;
      break;
    }
  }

  if (opt.multistart) {
    MimoSolution alt = solve_see_perfect_eigenmode(ch, pm);
    if (alt.objective > prev) {
      ScoOptions inner = opt;
      inner.multistart = false;
      MimoSolution refined = solve_see_perfect_sco(ch, pm, alt.Q_star, inner);
      if (refined.objective > prev) {
        refined.report.outer_iterations += sol.report.outer_iterations;
        return refined;
      }
    }
  }

  if (!(prev > 0.0)) {
    MimoSolution z = zero_solution(n);
    z.report.outer_iterations = sol.report.outer_iterations;
    z.report.objective_trace = sol.report.objective_trace;
    z.report.dinkelbach_runs = sol.report.dinkelbach_runs;
    return z;
  }
  sol.Q_star = TransmitCovariance(q0);
  sol.objective = prev;
  sol.report.status = done ? status_for(q0, pm) : SolveStatus::iteration_cap;
  sol.report.kkt_residual = see_kkt_residual(ch, pm, q0);
  return sol;
}

MimoSolution solve_see_perfect_eigenmode(const MimoChannelPair& ch, const PowerModel& pm,
                                         const PgOptions& pg) {
  pm.validate();
  const Index n = ch.n_tx();
  const HermitianMatrix hh = HermitianMatrix::gram(ch.H());
  const HermitianMatrix gg = HermitianMatrix::gram(ch.G());
  const auto sev = linalg::herm_evd(hh - gg);
  const double tol = 1e-12 * std::max(1.0, sev.values.cwiseAbs().maxCoeff());
  Index k = 0;
  while (k < n && sev.values(k) > tol) ++k;
  if (k == 0) return zero_solution(n);

  const CMatrix up = sev.vectors.leftCols(k);
  LogDetDifference f;
  f.add(HermitianMatrix(up.adjoint() * hh.matrix() * up),
        HermitianMatrix(up.adjoint() * gg.matrix() * up));
  RatioRun run = pg_dinkelbach(f, pm, pg);

  MimoSolution sol;
  const HermitianMatrix q(up * run.x.matrix() * up.adjoint());
  sol.Q_star = TransmitCovariance(q);
  sol.objective = model::see(ch, sol.Q_star, pm);
  if (!(sol.objective > 0.0)) return zero_solution(n);
  sol.report.status = status_for(q, pm);
  sol.report.outer_iterations = 1;
  sol.report.inner_iterations = run.inner_iterations;
  sol.report.dinkelbach_runs.push_back(run.summary);
  sol.report.objective_trace.push_back(sol.objective);
  sol.report.kkt_residual = see_kkt_residual(ch, pm, q);
  return sol;
}

MimoSolution solve_skee_perfect(const MimoChannelPair& ch, const PowerModel& pm,
                                const PgOptions& pg) {
  pm.validate();
  const Index n = ch.n_tx();
  const HermitianMatrix hh = HermitianMatrix::gram(ch.H());
  if (!(hh.trace() > 0.0)) return zero_solution(n);
  const HermitianMatrix gg = HermitianMatrix::gram(ch.G());
  LogDetDifference f;
  f.add(hh + gg, gg);
  RatioRun run = pg_dinkelbach(f, pm, pg);

  MimoSolution sol;
  sol.Q_star = TransmitCovariance(run.x);
  sol.objective = model::skee(ch, sol.Q_star, pm);
  if (!(sol.objective > 0.0)) return zero_solution(n);
  sol.report.status = status_for(run.x, pm);
  sol.report.outer_iterations = 1;
  sol.report.inner_iterations = run.inner_iterations;
  sol.report.dinkelbach_runs.push_back(run.summary);
  sol.report.objective_trace.push_back(sol.objective);
  return sol;
}

double see_kkt_residual(const MimoChannelPair& ch, const PowerModel& pm, const HermitianMatrix& q) {
  const linalg::LogDetForm bob(HermitianMatrix::gram(ch.H()));
  const linalg::LogDetForm eve(HermitianMatrix::gram(ch.G()));
  CMatrix gb, ge;
  const double rb = bob.value_and_gradient(q.matrix(), gb);
  const double re = eve.value_and_gradient(q.matrix(), ge);
  const double beta = (rb - re) / pm.consumed(q.trace());
  CMatrix grad = gb - ge;
  grad.diagonal().array() -= beta * pm.mu;
  const CMatrix r =
      linalg::project_psd_trace(HermitianMatrix(q.matrix() + grad), pm.pmax).matrix() - q.matrix();
  return r.norm() / (1.0 + gb.norm());
}

bool positive_eigenspace_certificate(const MimoChannelPair& ch, const HermitianMatrix& q,
                                     double tol) {
  const auto qev = linalg::herm_evd(q);
  const CMatrix s = (HermitianMatrix::gram(ch.H()) - HermitianMatrix::gram(ch.G())).matrix();
  const double thresh = tol * std::max(1.0, q.trace());
  for (Index i = 0; i < q.dim(); ++i) {
    if (qev.values(i) <= thresh) continue;
    const auto u = qev.vectors.col(i);
    if (!((u.adjoint() * s * u)(0).real() > 0.0)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

SaaSampleSet SaaSampleSet::draw(Index n_eve, Index n_tx, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("SaaSampleSet: count must be >= 1");
  SaaSampleSet set;
  set.seed = seed;
  set.count = count;
  set.samples.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    set.samples.push_back(
        model::sample_gaussian(n_eve, n_tx, 1.0, mix_seed(seed, static_cast<std::uint64_t>(s))));
  }
  return set;
}

// G_s U has the law of G_s for unitary U, so the samples are used directly
// in the eigenbasis of H^H H.
double saa_eve_logdet(const SaaSampleSet& saa, const RVector& q) {
  if (saa.samples.empty()) throw std::invalid_argument("saa_eve_logdet: empty sample set");
  double acc = 0.0;
  for (const auto& g : saa.samples) acc += logdet_plus_lowrank(g, q);
  return acc / static_cast<double>(saa.samples.size());
}

RVector saa_eve_logdet_gradient(const SaaSampleSet& saa, const RVector& q) {
  if (saa.samples.empty()) throw std::invalid_argument("saa_eve_logdet_gradient: empty sample set");
  const Index n = q.size();
  RVector acc = RVector::Zero(n);
  for (const auto& g : saa.samples) {
    CMatrix z = g * q.asDiagonal() * g.adjoint();
    z.diagonal().array() += 1.0;
    for (Index k = 0; k < n; ++k) {
      const auto gk = g.col(k);
      CMatrix zk = z - q(k) * gk * gk.adjoint();
      Eigen::LLT<CMatrix> llt(zk);
      linalg::CVector sol = llt.info() == Eigen::Success
                                ? linalg::CVector(llt.solve(gk))
                                : linalg::CVector(zk.ldlt().solve(gk));
      const double c = std::max(0.0, gk.dot(sol).real());
      acc(k) += c / (1.0 + q(k) * c);
    }
  }
  return acc / static_cast<double>(saa.samples.size());
}

namespace {

struct Eigenbasis {
  RVector h;  // eigenvalues of H^H H, descending, clipped at 0
  CMatrix u;
};

Eigenbasis eigenbasis(const CMatrix& h) {
  const auto ev = linalg::herm_evd(HermitianMatrix::gram(h));
  return {ev.values.cwiseMax(0.0), ev.vectors};
}

double saa_see_nats(const RVector& hvals, const SaaSampleSet& saa, const RVector& q) {
  double bob = 0.0;
  for (Index i = 0; i < q.size(); ++i) bob += std::log1p(q(i) * hvals(i));
  return bob - saa_eve_logdet(saa, q);
}

}  // namespace

double saa_see(const CMatrix& h, const PowerModel& pm, const SaaSampleSet& saa, const RVector& q) {
  const Eigenbasis eb = eigenbasis(h);
  if (q.size() != eb.h.size()) throw std::invalid_argument("saa_see: power profile dimension mismatch");
  return saa_see_nats(eb.h, saa, q) / kLn2 / pm.consumed(q.sum());
}

double saa_skee(const CMatrix& h, const PowerModel& pm, const SaaSampleSet& saa,
                const HermitianMatrix& q) {
  const HermitianMatrix hh = HermitianMatrix::gram(h);
  double acc = 0.0;
  for (const auto& g : saa.samples) {
    const HermitianMatrix gg = HermitianMatrix::gram(g);
    acc += linalg::logdet_ipq(hh + gg, q) - linalg::logdet_ipq(gg, q);
  }
  acc /= static_cast<double>(saa.samples.size());
  return std::max(0.0, acc) / kLn2 / pm.consumed(q.trace());
}

RVector weighted_waterfill(const RVector& gains, const RVector& weights, double budget) {
  const Index n = gains.size();
  if (weights.size() != n) throw std::invalid_argument("weighted_waterfill: size mismatch");
  double gmax = 0.0;
  double wmin = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) {
    if (gains(i) > 0.0) {
      gmax = std::max(gmax, gains(i));
      wmin = std::min(wmin, weights(i));
    }
  }
  RVector q = RVector::Zero(n);
  if (!(gmax > 0.0)) return q;
  auto fill = [&](double nu) {
    RVector out = RVector::Zero(n);
    for (Index i = 0; i < n; ++i) {
      if (gains(i) > 0.0) out(i) = std::max(0.0, 1.0 / (weights(i) + nu) - 1.0 / gains(i));
    }
    return out;
  };
  const double nu_lo = std::max(0.0, -wmin);
  if (wmin + nu_lo > 0.0) {
    q = fill(nu_lo);
    if (q.sum() <= budget) return q;
  }
  double lo = nu_lo;
  double hi = nu_lo + gmax;
  q = fill(hi);
  for (int it = 0; it < kBisectionSteps && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    RVector t = fill(mid);
    if (t.sum() <= budget) {
      hi = mid;
      q = std::move(t);
    } else {
      lo = mid;
    }
  }
  return q;
}

MimoSolution solve_see_statistical(const CMatrix& h, const PowerModel& pm,
                                   const SaaSampleSet& saa, const std::optional<RVector>& q_init,
                                   const StatisticalSeeOptions& opt) {
  pm.validate();
  const Index n = h.cols();
  if (saa.n_tx() != n) throw std::invalid_argument("solve_see_statistical: SAA dimension mismatch");
  const Eigenbasis eb = eigenbasis(h);
  if (!(eb.h(0) > 0.0)) return zero_solution(n);

  RVector q = q_init ? *q_init : RVector::Constant(n, pm.pmax / (2.0 * n));
  if (q.size() != n || (q.array() < 0.0).any() || q.sum() > pm.pmax + 1e-9) {
    throw std::invalid_argument("solve_see_statistical: q_init infeasible");
  }

  auto ratio_bits = [&](const RVector& x) {
    return saa_see_nats(eb.h, saa, x) / kLn2 / pm.consumed(x.sum());
  };
  MimoSolution sol;
  double prev = ratio_bits(q);
  sol.report.objective_trace.push_back(prev);
  bool done = false;
  for (int outer = 1; outer <= opt.max_outer; ++outer) {
    const RVector q0 = q;
    const RVector d = saa_eve_logdet_gradient(saa, q0);
    const double g0 = saa_eve_logdet(saa, q0);
    frac::RatioProblem<RVector> prob;
    prob.numerator = [&](const RVector& x) {
      double v = -g0 - d.dot(x - q0);
      for (Index i = 0; i < n; ++i) v += std::log1p(x(i) * eb.h(i));
      return v;
    };
    prob.denominator = [&](const RVector& x) { return pm.consumed(x.sum()); };
    prob.maximize_auxiliary = [&](double beta) {
      return weighted_waterfill(eb.h, (d.array() + beta * pm.mu).matrix(), pm.pmax);
    };
    auto rep = frac::dinkelbach(prob, opt.dinkelbach);
    sol.report.dinkelbach_runs.push_back(rep.summary());
    sol.report.inner_iterations += rep.iterations;
    sol.report.outer_iterations = outer;
    const double cur = ratio_bits(rep.x_star);
    sol.report.objective_trace.push_back(cur);
    if (cur >= prev) q = rep.x_star;
    if (std::abs(cur - prev) <= opt.eps) {
      done = true;
      prev = std::max(cur, prev);
      break;
    }
    prev = std::max(cur, prev);
  }
  if (!(prev > 0.0)) {
    MimoSolution z = zero_solution(n);
    z.report.outer_iterations = sol.report.outer_iterations;
    z.report.objective_trace = sol.report.objective_trace;
    return z;
  }
  const HermitianMatrix qm = HermitianMatrix::from_eigen(eb.u, q);
  sol.Q_star = TransmitCovariance(qm);
  sol.objective = prev;
  sol.report.status = done ? status_for(qm, pm) : SolveStatus::iteration_cap;
  return sol;
}

MimoSolution solve_skee_statistical(const CMatrix& h, const PowerModel& pm,
                                    const SaaSampleSet& saa, const PgOptions& pg) {
  pm.validate();
  const Index n = h.cols();
  if (saa.n_tx() != n) throw std::invalid_argument("solve_skee_statistical: SAA dimension mismatch");
  const HermitianMatrix hh = HermitianMatrix::gram(h);
  if (!(hh.trace() > 0.0)) return zero_solution(n);
  LogDetDifference f;
  for (const auto& g : saa.samples) {
    const HermitianMatrix gg = HermitianMatrix::gram(g);
    f.add(hh + gg, gg);
  }
  RatioRun run = pg_dinkelbach(f, pm, pg);
  if (!(run.ratio > 0.0)) return zero_solution(n);
  MimoSolution sol;
  sol.Q_star = TransmitCovariance(run.x);
  sol.objective = run.ratio / kLn2;
  sol.report.status = status_for(run.x, pm);
  sol.report.outer_iterations = 1;
  sol.report.inner_iterations = run.inner_iterations;
  sol.report.dinkelbach_runs.push_back(run.summary);
  sol.report.objective_trace.push_back(sol.objective);
  return sol;
}

}  // namespace seeopt::mimo
