// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "seeopt/report.hpp"
#include "seeopt/wiretap.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace seeopt::mimo {

using linalg::CMatrix;
using linalg::HermitianMatrix;
using linalg::Index;
using linalg::RVector;
using model::MimoChannelPair;
using model::PowerModel;
using model::TransmitCovariance;

struct MimoSolution {
  TransmitCovariance Q_star = TransmitCovariance::zero(1);
  double objective = 0.0;  // bits/joule (bits when mu = 0 and Pc = 1)
  SolveReport report;
};

// ---------------------------------------------------------------------------
// Inner concave maximizers

/// Global maximizer of
///   log|I + H Q H^H| - Re tr(M0 Q) - beta (mu tr Q + Pc)
/// over {Q >= 0, tr Q <= pmax}, where M0 is PSD. With A = M0 + (beta mu + nu) I
/// the substitution X = A^{1/2} Q A^{1/2} turns the problem into water-filling
/// over the eigenvalues of A^{-1/2} H^H H A^{-1/2}; the trace multiplier nu is
/// found by bisection.
HermitianMatrix inner_concave_psd(const CMatrix& h, const HermitianMatrix& m0, double beta,
                                  const PowerModel& pm);

/// Average over terms of log|I + A_j Q| - log|I + B_j Q| with A_j >= B_j,
/// which is concave in Q.
class LogDetDifference {
 public:
  void add(const HermitianMatrix& plus, const HermitianMatrix& minus);
  Index dim() const;
  std::size_t size() const { return terms_.size(); }
  double value(const CMatrix& q) const;
  double value_and_gradient(const CMatrix& q, CMatrix& grad) const;

 private:
  std::vector<std::pair<linalg::LogDetForm, linalg::LogDetForm>> terms_;
};

struct PgOptions {
  double tol = 1e-10;  // stop when ||P(Q + grad) - Q||_F <= tol (1 + |objective|)
  int max_iter = 20000;
};

struct PgResult {
  HermitianMatrix q;
  double objective = 0.0;
  int iterations = 0;
  double pg_norm = 0.0;
  bool converged = false;
};

/// Projected gradient ascent with spectral (Barzilai-Borwein) trial steps and
/// Armijo backtracking for max f(Q) - linear_cost * tr Q over
/// {Q >= 0, tr Q <= budget}. Projections use linalg::project_psd_trace.
PgResult maximize_concave_psd(const LogDetDifference& f, double linear_cost, double budget,
                              const HermitianMatrix& init, const PgOptions& opt = {});

// ---------------------------------------------------------------------------
// Perfect CSI

/// Concave lower bound of the secrecy-rate numerator obtained by linearizing
/// the eavesdropper term at Q0:
///   log|I + HQH^H| - g0 - Re tr(M0 (Q - Q0)),
/// g0 = log|I + G Q0 G^H|, M0 = G^H (I + G Q0 G^H)^{-1} G.
class SeeSurrogate {
 public:
  SeeSurrogate(const MimoChannelPair& ch, const HermitianMatrix& q0);

  double numerator(const HermitianMatrix& q) const;
  double g0() const { return g0_; }
  const HermitianMatrix& m0() const { return m0_; }

 private:
  linalg::LogDetForm bob_;
  HermitianMatrix q0_;
  double g0_ = 0.0;
  HermitianMatrix m0_;
};

struct ScoOptions {
  double eps = 1e-6;  // |SEE_l - SEE_{l-1}| stopping threshold, bits/joule
  /// Also require see_kkt_residual <= kkt_tol before stopping; <= 0 disables.
  double kkt_tol = 1e-5;
  int max_outer = 5000;
  frac::DinkelbachOptions dinkelbach;
  /// Also start from the eigenmode-selection solution and keep the better.
  bool multistart = false;
};

/// Sequential convex optimization for SEE with perfect CSI. Each outer step
/// maximizes the SeeSurrogate ratio globally with Dinkelbach's method.
/// Default start: pmax / (2 N_A) I.
MimoSolution solve_see_perfect_sco(const MimoChannelPair& ch, const PowerModel& pm,
                                   const std::optional<TransmitCovariance>& q_init = {},
                                   const ScoOptions& opt = {});

/// Eigenmode selection: restricts transmission to the positive eigenspace
/// of H^H H - G^H G, where the secrecy-rate numerator is concave, and solves
/// the reduced problem globally.
MimoSolution solve_see_perfect_eigenmode(const MimoChannelPair& ch, const PowerModel& pm,
                                         const PgOptions& pg = {});

/// Global SKEE maximization (concave numerator) by Dinkelbach's method.
MimoSolution solve_skee_perfect(const MimoChannelPair& ch, const PowerModel& pm,
                                const PgOptions& pg = {});

/// Projected-gradient KKT residual of the SEE problem at Q:
///   ||P(Q + grad) - Q||_F / (1 + ||H^H (I + HQH^H)^{-1} H||_F),
/// grad = H^H(I+HQH^H)^{-1}H - G^H(I+GQG^H)^{-1}G - SEE(Q) mu I with SEE in
/// nats/joule, P the projection onto {Q >= 0, tr Q <= pmax}.
double see_kkt_residual(const MimoChannelPair& ch, const PowerModel& pm,
                        const HermitianMatrix& q);

/// True if u^H (H^H H - G^H G) u > 0 for every eigenvector u of Q whose
/// eigenvalue exceeds tol * max(1, tr Q). Vacuously true for Q = 0.
bool positive_eigenspace_certificate(const MimoChannelPair& ch, const HermitianMatrix& q,
                                     double tol = 1e-9);

// ---------------------------------------------------------------------------
// Statistical CSI (sample-average approximation over eavesdropper draws)

inline constexpr int kDefaultSaaCount = 500;

/// Fixed set of unit-variance N_E x N_A eavesdropper channels.
struct SaaSampleSet {
  std::vector<CMatrix> samples;
  std::uint64_t seed = 0;
  int count = 0;

  static SaaSampleSet draw(Index n_eve, Index n_tx, int count, std::uint64_t seed);
  Index n_tx() const { return samples.empty() ? 0 : samples.front().cols(); }
};

/// g(q) = mean_s log|I + G_s diag(q) G_s^H| (nats).
double saa_eve_logdet(const SaaSampleSet& saa, const RVector& q);
/// dg/dq_k = mean_s c_k / (1 + q_k c_k), c_k = g_k^H Z_k^{-1} g_k with
/// Z_k = I + sum_{j != k} q_j g_j g_j^H. Equal to (1/q_k)(1 - E[1/(1 + q_k c_k)])
/// and continuous at q_k = 0 where it takes the value E[c_k].
RVector saa_eve_logdet_gradient(const SaaSampleSet& saa, const RVector& q);

/// SAA SEE (bits/joule) of the power profile q applied along the
/// eigenvectors of H^H H (descending eigenvalue order).
double saa_see(const CMatrix& h, const PowerModel& pm, const SaaSampleSet& saa, const RVector& q);
/// SAA SKEE (bits/joule) of a covariance Q.
double saa_skee(const CMatrix& h, const PowerModel& pm, const SaaSampleSet& saa,
                const HermitianMatrix& q);

struct StatisticalSeeOptions {
  double eps = 1e-6;  // bits/joule
  int max_outer = 100;
  frac::DinkelbachOptions dinkelbach;
};

/// Sequential convex optimization over the eigenvalues of Q, with Q's
/// eigenvectors fixed to those of H^H H. The inner problem is water-filling.
MimoSolution solve_see_statistical(const CMatrix& h, const PowerModel& pm,
                                   const SaaSampleSet& saa,
                                   const std::optional<RVector>& q_init = {},
                                   const StatisticalSeeOptions& opt = {});

/// Global SAA-SKEE maximization (average of concave log-det differences).
MimoSolution solve_skee_statistical(const CMatrix& h, const PowerModel& pm,
                                    const SaaSampleSet& saa, const PgOptions& pg = {});

/// Water-filling q_i = [1/(w_i + nu) - 1/gain_i]_+ with the smallest nu >= 0
/// such that sum q <= budget. Entries with gain_i <= 0 get zero.
RVector weighted_waterfill(const RVector& gains, const RVector& weights, double budget);

}  // namespace seeopt::mimo
