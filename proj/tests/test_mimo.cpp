// SPDX-License-Identifier: Apache-2.0

#include "seeopt/mimo.hpp"

#include "seeopt/oracles.hpp"
#include "seeopt/stats.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace seeopt;
using namespace seeopt::mimo;
using model::kLn2;
using linalg::CMatrix;
using linalg::Complex;
using linalg::RVector;
using testsupport::random_cmatrix;
using testsupport::random_feasible;

namespace {

PowerModel pm10() {
  PowerModel pm;
  pm.pmax = 10.0;
  return pm;
}

double inner_objective(const CMatrix& h, const CMatrix& m0, double beta, const PowerModel& pm,
                       const CMatrix& q) {
  const Index nb = h.rows();
  return testsupport::logdet_lu(CMatrix::Identity(nb, nb) + h * q * h.adjoint()) -
         (m0 * q).trace().real() - beta * pm.consumed(q.trace().real());
}

double see_direct(const MimoChannelPair& ch, const PowerModel& pm, const CMatrix& q) {
  const CMatrix& H = ch.H();
  const CMatrix& G = ch.G();
  const double r = testsupport::logdet_lu(CMatrix::Identity(H.rows(), H.rows()) + H * q * H.adjoint()) -
                   testsupport::logdet_lu(CMatrix::Identity(G.rows(), G.rows()) + G * q * G.adjoint());
  return r / kLn2 / pm.consumed(q.trace().real());
}

}  // namespace

TEST_SUITE("mimo") {

TEST_CASE("inner_concave_psd beats a 4-parameter grid") {
  const PowerModel pm = pm10();
  for (int i = 0; i < 10; ++i) {
    std::mt19937_64 rng(mix_seed(20, i));
    const CMatrix h = random_cmatrix(rng, 2, 2, 2.0);
    const CMatrix a = random_cmatrix(rng, 2, 2);
    const HermitianMatrix m0(0.3 * a * a.adjoint());
    const double beta = 0.05 * i;
    const HermitianMatrix q = inner_concave_psd(h, m0, beta, pm);
    CHECK(linalg::herm_evd(q).values(1) >= -1e-12);
    CHECK(q.trace() <= pm.pmax + 1e-9);
    const double got = inner_objective(h, m0.matrix(), beta, pm, q.matrix());
    const auto ref = oracles::grid_argmax_cov2(
        [&](const Eigen::Matrix2cd& x) { return inner_objective(h, m0.matrix(), beta, pm, x); }, pm.pmax, 24);
    CHECK(got >= ref.value - 1e-6 * (1.0 + std::abs(ref.value)));
    // Feasible perturbations never improve a global maximizer.
    for (int k = 0; k < 50; ++k) {
      const CMatrix y = random_feasible(rng, 2, pm.pmax);
      CHECK(inner_objective(h, m0.matrix(), beta, pm, y) <= got + 1e-10);
    }
  }
}

TEST_CASE("inner_concave_psd simple cases") {
  PowerModel pm;
  pm.pmax = 2.0;
  pm.mu = 0.0;
  const HermitianMatrix q = inner_concave_psd(CMatrix::Identity(2, 2), HermitianMatrix::zero(2), 0.0, pm);
  CHECK(testsupport::max_abs(q.matrix() - CMatrix::Identity(2, 2)) <= 1e-9);
  const HermitianMatrix z = inner_concave_psd(CMatrix::Zero(2, 2), HermitianMatrix::identity(2), 0.1, pm);
  CHECK(z.trace() <= 1e-12);
}

TEST_CASE("LogDetDifference gradient against central differences") {
  std::mt19937_64 rng(21);
  LogDetDifference f;
  for (int j = 0; j < 3; ++j) {
    const CMatrix g = random_cmatrix(rng, 2, 3);
    const CMatrix h = random_cmatrix(rng, 2, 3);
    f.add(HermitianMatrix::gram(g) + HermitianMatrix::gram(h), HermitianMatrix::gram(g));
  }
  CHECK(f.size() == 3);
  CHECK(f.dim() == 3);
  const CMatrix q = random_feasible(rng, 3, 4.0);
  CMatrix grad;
  CHECK(f.value_and_gradient(q, grad) == doctest::Approx(f.value(q)).epsilon(1e-14));
  for (int d = 0; d < 10; ++d) {
    const CMatrix dir = linalg::hermitian_part(random_cmatrix(rng, 3, 3));
    const double e = 1e-6;
    const double fd = (f.value(q + e * dir) - f.value(q - e * dir)) / (2 * e);
    CHECK(std::abs(fd - linalg::inner(grad, dir)) <= 1e-7);
  }
}

TEST_CASE("projected gradient recovers water-filling capacity") {
  std::mt19937_64 rng(22);
  const CMatrix h = random_cmatrix(rng, 3, 3);
  LogDetDifference f;
  f.add(HermitianMatrix::gram(h), HermitianMatrix::zero(3));
  const auto r = maximize_concave_psd(f, 0.0, 5.0, HermitianMatrix::zero(3));
  CHECK(r.converged);
  const RVector gains = Eigen::SelfAdjointEigenSolver<CMatrix>(h.adjoint() * h).eigenvalues();
  const RVector p = oracles::waterfill_capacity(gains, 5.0);
  const double cap = (1.0 + gains.array() * p.array()).log().sum();
  CHECK(r.objective == doctest::Approx(cap).epsilon(1e-9));
}

TEST_CASE("surrogate touches and lower-bounds the numerator") {
  for (int i = 0; i < 10; ++i) {
    const auto ch = model::sample_channels(3, 2, 2, 2.0, 1.0, mix_seed(23, i));
    std::mt19937_64 rng(i);
    const HermitianMatrix q0(random_feasible(rng, 3, 10.0));
    const SeeSurrogate s(ch, q0);
    const model::GramMetrics gm(ch);
    CHECK(s.numerator(q0) == doctest::Approx(gm.secrecy_rate_nats(q0.matrix())).epsilon(1e-10));
    for (int k = 0; k < 10; ++k) {
      const CMatrix q = random_feasible(rng, 3, 10.0);
      CHECK(s.numerator(HermitianMatrix(q)) <= gm.secrecy_rate_nats(q) + 1e-10);
      const CMatrix dir = q - q0.matrix();
      const double e = 1e-6;
      const double d_sur = (s.numerator(HermitianMatrix(q0.matrix() + e * dir)) -
                            s.numerator(HermitianMatrix(q0.matrix() - e * dir))) / (2 * e);
      const double d_true = (gm.secrecy_rate_nats(CMatrix(q0.matrix() + e * dir)) -
                             gm.secrecy_rate_nats(CMatrix(q0.matrix() - e * dir))) / (2 * e);
      CHECK(std::abs(d_sur - d_true) <= 1e-6 * (1.0 + std::abs(d_true)));
    }
  }
}

TEST_CASE("SCO: monotone history, small KKT residual, at least eigenmode") {
  const PowerModel pm = pm10();
  for (int i = 0; i < 20; ++i) {
    const auto ch = model::sample_channels(2 + i % 2, 2, 2, 2.0, 1.0, mix_seed(24, i));
    const auto s = solve_see_perfect_sco(ch, pm);
    const auto& tr = s.report.objective_trace;
    for (std::size_t k = 1; k < tr.size(); ++k) CHECK(tr[k] >= tr[k - 1] - 1e-12);
    CHECK(s.report.kkt_residual <= 1e-4);
    CHECK(s.objective == doctest::Approx(see_direct(ch, pm, s.Q_star.matrix())).epsilon(1e-9));
    const auto e = solve_see_perfect_eigenmode(ch, pm);
    CHECK(s.objective >= e.objective - 1e-9);
  }
}

TEST_CASE("SCO degenerate channels") {
  const PowerModel pm = pm10();
  std::mt19937_64 rng(25);
  const CMatrix h = random_cmatrix(rng, 2, 2);
  const auto same = solve_see_perfect_sco(MimoChannelPair(h, h), pm);
  CHECK(same.objective == 0.0);
  CHECK(same.Q_star.power() == 0.0);
  CHECK(same.report.status == SolveStatus::zero_clamp);
  // Without an eavesdropper the problem is energy-efficient water-filling.
  const auto free = solve_see_perfect_sco(MimoChannelPair(h, CMatrix::Zero(2, 2)), pm);
  const auto ref = oracles::ee_waterfill_reference(h, pm);
  CHECK(free.objective == doctest::Approx(ref.efficiency).epsilon(1e-6));
}

TEST_CASE("eigenmode selection") {
  const PowerModel pm = pm10();
  std::mt19937_64 rng(26);
  const CMatrix h = random_cmatrix(rng, 2, 3);
  const auto none = solve_see_perfect_eigenmode(MimoChannelPair(h, 2.0 * h), pm);
  CHECK(none.objective == 0.0);
  for (int i = 0; i < 10; ++i) {
    const auto ch = model::sample_channels(3, 2, 2, 2.0, 1.0, mix_seed(27, i));
    const auto e = solve_see_perfect_eigenmode(ch, pm);
    CHECK(positive_eigenspace_certificate(ch, e.Q_star.hermitian()));
    CHECK(e.objective == doctest::Approx(see_direct(ch, pm, e.Q_star.matrix())).epsilon(1e-9));
  }
  // H^H H >= G^H G: the positive eigenspace is everything, so eigenmode is near-optimal.
  const CMatrix g = 0.4 * h;
  const MimoChannelPair dom(h, g);
  const auto e = solve_see_perfect_eigenmode(dom, pm);
  const auto s = solve_see_perfect_sco(dom, pm);
  CHECK(e.objective >= 0.99 * s.objective);
}

TEST_CASE("SKEE perfect against the 2x2 covariance grid") {
  const PowerModel pm = pm10();
  for (int i = 0; i < 5; ++i) {
    const auto ch = model::sample_channels(2, 2, 2, 2.0, 1.0, mix_seed(28, i));
    const auto s = solve_skee_perfect(ch, pm);
    const model::GramMetrics gm(ch);
    const auto ref = oracles::grid_argmax_cov2(
        [&](const Eigen::Matrix2cd& q) {
          return gm.secret_key_rate_nats(CMatrix(q)) / kLn2 / pm.consumed(q.trace().real());
        },
        pm.pmax, 24);
    CHECK(s.objective >= ref.value - 1e-6 * (1.0 + ref.value));
    CHECK(s.objective == doctest::Approx(model::skee(ch, s.Q_star, pm)).epsilon(1e-9));
  }
  const auto zero = solve_skee_perfect(MimoChannelPair(CMatrix::Zero(2, 2), CMatrix::Ones(2, 2)), pm);
  CHECK(zero.objective == 0.0);
}

TEST_CASE("weighted water-filling") {
  RVector gains(3), w(3);
  gains << 4.0, 1.0, 0.0;
  w << 0.0, 0.0, 0.0;
  const RVector q = weighted_waterfill(gains, w, 2.0);
  CHECK(q.sum() == doctest::Approx(2.0));
  CHECK(q(2) == 0.0);
  CHECK(q(0) - q(1) == doctest::Approx(0.75));  // equal water level 1/gain + q
  w << 10.0, 10.0, 0.0;
  const RVector none = weighted_waterfill(gains, w, 2.0);
  CHECK(none.sum() == 0.0);
}

TEST_CASE("SAA gradient against central differences") {
  const auto saa = SaaSampleSet::draw(2, 3, 100, 29);
  CHECK(saa.count == 100);
  CHECK(saa.n_tx() == 3);
  for (int i = 0; i < 10; ++i) {
    RVector q(3);
    q << 0.1 * i, 1.0 + 0.3 * i, 0.0;
    const RVector g = saa_eve_logdet_gradient(saa, q);
    for (int k = 0; k < 3; ++k) {
      const double h = 1e-6;
      RVector qp = q, qm = q;
      qp(k) += h;
      qm(k) = std::max(0.0, qm(k) - h);
      const double fd = (saa_eve_logdet(saa, qp) - saa_eve_logdet(saa, qm)) / (qp(k) - qm(k));
      CHECK(g(k) == doctest::Approx(fd).epsilon(1e-4));
    }
  }
}

TEST_CASE("statistical SEE: single antenna agrees with a power grid") {
  const PowerModel pm = pm10();
  const auto saa = SaaSampleSet::draw(1, 1, 300, 30);
  CMatrix h(1, 1);
  h << Complex(1.5, 0.5);
  const auto s = solve_see_statistical(h, pm, saa);
  const oracles::GridSpec grid{0.0, pm.pmax, 20001, oracles::GridSpec::Scale::linear};
  const auto ref = oracles::grid_argmax_scalar(
      [&](double p) {
        RVector q(1);
        q << p;
        return saa_see(h, pm, saa, q);
      },
      grid);
  CHECK(s.objective >= std::max(0.0, ref.value) - 1e-6 * (1.0 + ref.value));
  const auto zero = solve_see_statistical(CMatrix::Zero(2, 2), pm, SaaSampleSet::draw(2, 2, 50, 31));
  CHECK(zero.objective == 0.0);
  CHECK(zero.Q_star.power() == 0.0);
}

TEST_CASE("statistical SEE: history monotone, beats uniform allocations") {
  const PowerModel pm = pm10();
  const auto saa = SaaSampleSet::draw(2, 2, 200, 32);
  for (int i = 0; i < 5; ++i) {
    const auto ch = model::sample_channels(2, 2, 2, 2.0, 1.0, mix_seed(33, i));
    const auto s = solve_see_statistical(ch.H(), pm, saa);
    const auto& tr = s.report.objective_trace;
    for (std::size_t k = 1; k < tr.size(); ++k) CHECK(tr[k] >= tr[k - 1] - 1e-12);
    for (double p : {0.1, 1.0, 5.0, 10.0}) {
      RVector q = RVector::Constant(2, p / 2);
      CHECK(s.objective >= saa_see(ch.H(), pm, saa, q) - 1e-9);
    }
  }
}

TEST_CASE("statistical SKEE dominates random feasible covariances") {
  const PowerModel pm = pm10();
  const auto saa = SaaSampleSet::draw(2, 2, 100, 34);
  const auto ch = model::sample_channels(2, 2, 2, 2.0, 1.0, 35);
  const auto s = solve_skee_statistical(ch.H(), pm, saa);
  CHECK(s.objective == doctest::Approx(saa_skee(ch.H(), pm, saa, s.Q_star.hermitian())).epsilon(1e-9));
  std::mt19937_64 rng(36);
  for (int k = 0; k < 1000; ++k) {
    const HermitianMatrix q(random_feasible(rng, 2, pm.pmax));
    CHECK(saa_skee(ch.H(), pm, saa, q) <= s.objective + 1e-9);
  }
  const auto zero = solve_skee_statistical(CMatrix::Zero(2, 2), pm, saa);
  CHECK(zero.objective == 0.0);
}

}  // TEST_SUITE
