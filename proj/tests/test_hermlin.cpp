// SPDX-License-Identifier: Apache-2.0

#include "seeopt/hermlin.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <limits>
#include <stdexcept>

using namespace seeopt::linalg;
using testsupport::random_cmatrix;
using testsupport::random_cvector;

namespace {

// Eigenvalues from the general (non-Hermitian) complex solver, sorted descending.
RVector general_eigs(const CMatrix& a) {
  Eigen::ComplexEigenSolver<CMatrix> es(a);
  RVector v = es.eigenvalues().real();
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

}  // namespace

TEST_SUITE("hermlin") {

TEST_CASE("HermitianMatrix enforces exact symmetry and validates input") {
  std::mt19937_64 rng(1);
  const CMatrix a = random_cmatrix(rng, 4, 4);
  const HermitianMatrix h(a);
  for (Index i = 0; i < 4; ++i) {
    CHECK(h(i, i).imag() == 0.0);
    for (Index j = 0; j < 4; ++j) CHECK(h(i, j) == std::conj(h(j, i)));
  }
  CHECK_THROWS_AS(HermitianMatrix(CMatrix::Zero(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(HermitianMatrix(CMatrix::Zero(17, 17)), std::invalid_argument);
  CMatrix bad = CMatrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(HermitianMatrix{bad}, std::invalid_argument);
}

TEST_CASE("herm_evd reconstructs and sorts descending") {
  std::mt19937_64 rng(2);
  for (Index n = 1; n <= 8; ++n) {
    const HermitianMatrix h(random_cmatrix(rng, n, n));
    const auto e = herm_evd(h);
    for (Index i = 1; i < n; ++i) CHECK(e.values(i - 1) >= e.values(i));
    const CMatrix back = e.vectors * e.values.asDiagonal() * e.vectors.adjoint();
    CHECK(testsupport::max_abs(back - h.matrix()) <= 1e-12);
    CHECK(testsupport::max_abs(e.vectors.adjoint() * e.vectors - CMatrix::Identity(n, n)) <= 1e-12);
    const RVector ref = general_eigs(h.matrix());
    CHECK((ref - e.values).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("rank2_eigs matches a dense solve") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 2 + trial % 7;
    const CVector x = random_cvector(rng, n);
    const CVector y = random_cvector(rng, n);
    const auto r = rank2_eigs(x, y);
    const RVector ref = general_eigs(x * x.adjoint() - y * y.adjoint());
    const double scale = 1.0 + x.squaredNorm() + y.squaredNorm();
    CHECK(std::abs(r.largest - ref(0)) <= 1e-10 * scale);
    CHECK(std::abs(r.smallest - ref(n - 1)) <= 1e-10 * scale);
    CHECK(r.largest >= 0.0);
    CHECK(r.smallest <= 0.0);
  }
}

TEST_CASE("rank2_eigs on parallel vectors and dimension one") {
  CVector x(3);
  x << Complex(1, 1), Complex(0, 2), Complex(-1, 0);
  const auto r = rank2_eigs(x, Complex(0.5, -0.5) * x);
  CHECK(r.largest == doctest::Approx(0.5 * x.squaredNorm()).epsilon(1e-14));
  CHECK(r.smallest == 0.0);
  CHECK(cauchy_schwarz_gap(x, 2.0 * x) <= 1e-14);
  CVector a(1), b(1);
  a << Complex(1, 0);
  b << Complex(3, 0);
  CHECK(rank2_eigs(a, b).smallest == doctest::Approx(-8.0));
  CHECK_THROWS_AS(rank2_eigs(a, x), std::invalid_argument);
}

TEST_CASE("gen_max_eigpair agrees with Eigen's generalized solver") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 2 + trial % 5;
    const CVector h = random_cvector(rng, n);
    const CVector g = random_cvector(rng, n);
    const CMatrix a = CMatrix::Identity(n, n) + h * h.adjoint();
    const CMatrix b = CMatrix::Identity(n, n) + g * g.adjoint();
    const auto got = gen_max_eigpair(HermitianMatrix(a), HermitianMatrix(b));
    Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> ges(a, b);
    const double ref = ges.eigenvalues()(n - 1);
    CHECK(std::abs(got.value - ref) <= 1e-10 * ref);
    CHECK(got.vector.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const CVector res = a * got.vector - got.value * (b * got.vector);
    CHECK(res.norm() <= 1e-9 * (1.0 + got.value));
  }
  CHECK_THROWS_AS(gen_max_eigpair(HermitianMatrix::identity(2), HermitianMatrix::zero(2)),
                  std::invalid_argument);
}

TEST_CASE("normalize_phase makes the largest entry real positive") {
  CVector v(3);
  v << Complex(0, 1), Complex(0, -3), Complex(1, 1);
  normalize_phase(v);
  CHECK(v(1).imag() == 0.0);
  CHECK(v(1).real() == doctest::Approx(3.0));
}

TEST_CASE("logdet_ipq against an LU determinant") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + trial % 6;
    const HermitianMatrix s = HermitianMatrix::gram(random_cmatrix(rng, n + 1, n));
    const HermitianMatrix q(testsupport::random_feasible(rng, n, 5.0));
    const double ref = testsupport::logdet_lu(CMatrix::Identity(n, n) + q.matrix() * s.matrix());
    CHECK(std::abs(logdet_ipq(s, q) - ref) <= 1e-11 * (1.0 + std::abs(ref)));
  }
}

TEST_CASE("LogDetForm gradient against central differences") {
  std::mt19937_64 rng(6);
  const Index n = 3;
  const LogDetForm f(HermitianMatrix::gram(random_cmatrix(rng, 2, n)));
  const CMatrix q = testsupport::random_feasible(rng, n, 3.0);
  CMatrix grad;
  const double v = f.value_and_gradient(q, grad);
  CHECK(v == doctest::Approx(f.value(q)).epsilon(1e-14));
  for (int d = 0; d < 10; ++d) {
    const CMatrix dir = hermitian_part(random_cmatrix(rng, n, n));
    const double h = 1e-6;
    const double fd = (f.value(q + h * dir) - f.value(q - h * dir)) / (2.0 * h);
    CHECK(std::abs(fd - inner(grad, dir)) <= 1e-7);
  }
}

TEST_CASE("project_psd_trace satisfies the projection inequality") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 2 + trial % 3;
    const double t = 0.5 + trial % 4;
    const HermitianMatrix a(3.0 * random_cmatrix(rng, n, n));
    const HermitianMatrix p = project_psd_trace(a, t);
    const auto e = herm_evd(p);
    CHECK(e.values(n - 1) >= -1e-12);
    CHECK(p.trace() <= t + 1e-12);
    // <A - P, Y - P> <= 0 for every feasible Y.
    for (int k = 0; k < 20; ++k) {
      const CMatrix y = testsupport::random_feasible(rng, n, t);
      CHECK(inner(a.matrix() - p.matrix(), y - p.matrix()) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(project_psd_trace(HermitianMatrix::identity(2), -1.0), std::invalid_argument);
}

TEST_CASE("project_capped_simplex worked examples") {
  RVector v(3);
  v << 3.0, 1.0, -2.0;
  const RVector p = project_capped_simplex(v, 2.0);
  CHECK(p(0) == doctest::Approx(2.0));
  CHECK(p(1) == doctest::Approx(0.0));
  CHECK(p(2) == 0.0);
  RVector w(2);
  w << 0.25, 0.5;
  CHECK((project_capped_simplex(w, 2.0) - w).norm() == 0.0);
}

}  // TEST_SUITE
