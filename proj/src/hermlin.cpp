// SPDX-License-Identifier: Apache-2.0

#include "seeopt/hermlin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace seeopt::linalg {
namespace {

void check_dim(Index n) {
  if (n < 1 || n > kMaxDim) {
    throw std::invalid_argument("HermitianMatrix: dimension " + std::to_string(n) +
                                " outside [1, " + std::to_string(kMaxDim) + "]");
  }
}

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("HermitianMatrix: matrix is not square");
  check_dim(a.rows());
  if (!a.allFinite()) throw std::invalid_argument("HermitianMatrix: non-finite entry");
  m_ = 0.5 * (a + a.adjoint());
}

HermitianMatrix HermitianMatrix::identity(Index n) {
  return HermitianMatrix(CMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::zero(Index n) { return HermitianMatrix(CMatrix::Zero(n, n)); }

HermitianMatrix HermitianMatrix::outer(const CVector& v) {
  return HermitianMatrix(v * v.adjoint());
}

HermitianMatrix HermitianMatrix::gram(const CMatrix& a) {
  return HermitianMatrix(a.adjoint() * a);
}

HermitianMatrix HermitianMatrix::from_eigen(const CMatrix& u, const RVector& d) {
  return HermitianMatrix(u * d.asDiagonal() * u.adjoint());
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  return HermitianMatrix(m_ + o.m_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  return HermitianMatrix(m_ - o.m_);
}

HermitianMatrix HermitianMatrix::operator*(double s) const { return HermitianMatrix(m_ * s); }

EigenDecomposition herm_evd(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("herm_evd: eigensolver did not converge");
  }
  // Eigen returns ascending order.
  EigenDecomposition out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

double cauchy_schwarz_gap(const CVector& x, const CVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("cauchy_schwarz_gap: size mismatch");
  double gap = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    for (Index j = i + 1; j < x.size(); ++j) {
      gap += std::norm(x(i) * y(j) - x(j) * y(i));
    }
  }
  return gap;
}

Rank2Eigs rank2_eigs(const CVector& x, const CVector& y) {
  if (x.size() != y.size() || x.size() < 1) {
    throw std::invalid_argument("rank2_eigs: vectors must share a dimension >= 1");
  }
  const double xx = x.squaredNorm();
  const double yy = y.squaredNorm();
  const double gap = cauchy_schwarz_gap(x, y);
  const double diff = xx - yy;
  const double root = std::sqrt(diff * diff + 4.0 * gap);
  // lambda1 * lambda2 = -gap; pick the cancellation-free root first.
  Rank2Eigs out;
  if (diff >= 0.0) {
    out.largest = 0.5 * (diff + root);
    out.smallest = out.largest > 0.0 ? -gap / out.largest : 0.0;
  } else {
    out.smallest = 0.5 * (diff - root);
    out.largest = -gap / out.smallest;
  }
  return out;
}

GenEigPair gen_max_eigpair(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b, "gen_max_eigpair");
  const EigenDecomposition eb = herm_evd(b);
  const double top = eb.values(0);
  const double bottom = eb.values(eb.values.size() - 1);
  if (!(top > 0.0) || !(bottom > 1e-12 * top)) {
    throw std::invalid_argument("gen_max_eigpair: B is not positive definite");
  }
  const RVector inv_root = eb.values.cwiseSqrt().cwiseInverse();
  const CMatrix b_inv_half = eb.vectors * inv_root.asDiagonal() * eb.vectors.adjoint();
  const HermitianMatrix congruent(b_inv_half * a.matrix() * b_inv_half);
  const EigenDecomposition ec = herm_evd(congruent);
  GenEigPair out;
  out.value = ec.values(0);
  out.vector = b_inv_half * ec.vectors.col(0);
  out.vector.normalize();
  normalize_phase(out.vector);
  return out;
}

HermitianMatrix psd_sqrt(const HermitianMatrix& a) {
  const EigenDecomposition e = herm_evd(a);
  return HermitianMatrix::from_eigen(e.vectors, e.values.cwiseMax(0.0).cwiseSqrt());
}

double logdet_identity_plus(const HermitianMatrix& x) {
  const Index n = x.dim();
  const CMatrix m = CMatrix::Identity(n, n) + x.matrix();
  Eigen::LLT<CMatrix> llt(m);
  if (llt.info() == Eigen::Success) {
    return 2.0 * llt.matrixLLT().diagonal().real().array().log().sum();
  }
  const EigenDecomposition e = herm_evd(x);
  return (1.0 + e.values.array().max(0.0)).log().sum();
}

double logdet_ipq(const HermitianMatrix& s, const HermitianMatrix& q) {
  require_same_dim(s, q, "logdet_ipq");
  return LogDetForm(s).value(q.matrix());
}

LogDetForm::LogDetForm(const HermitianMatrix& s) : s_(s), root_(psd_sqrt(s).matrix()) {}

double LogDetForm::value(const CMatrix& q) const {
  if (q.rows() != root_.rows() || q.cols() != root_.cols()) {
    throw std::invalid_argument("LogDetForm: dimension mismatch");
  }
  return logdet_identity_plus(HermitianMatrix(root_ * q * root_));
}

double LogDetForm::value_and_gradient(const CMatrix& q, CMatrix& grad) const {
  if (q.rows() != root_.rows() || q.cols() != root_.cols()) {
    throw std::invalid_argument("LogDetForm: dimension mismatch");
  }
  const Index n = root_.rows();
  const CMatrix m = CMatrix::Identity(n, n) + hermitian_part(root_ * q * root_);
  Eigen::LLT<CMatrix> llt(m);
  if (llt.info() == Eigen::Success) {
    grad = hermitian_part(root_ * llt.solve(root_));
    return 2.0 * llt.matrixLLT().diagonal().real().array().log().sum();
  }
  // Q slightly outside the PSD cone: fall back to the clipped spectrum.
  const EigenDecomposition e = herm_evd(HermitianMatrix(m));
  const RVector vals = e.values.cwiseMax(1.0);
  grad = hermitian_part(root_ * e.vectors * vals.cwiseInverse().asDiagonal() *
                        e.vectors.adjoint() * root_);
  return vals.array().log().sum();
}

RVector project_capped_simplex(const RVector& v, double t) {
  if (t < 0.0) throw std::invalid_argument("project_capped_simplex: negative budget");
  RVector clipped = v.cwiseMax(0.0);
  if (clipped.sum() <= t) return clipped;
  // Project onto {x >= 0, sum x = t}: x_i = max(v_i - tau, 0).
  std::vector<double> sorted(v.data(), v.data() + v.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    running += sorted[k];
    const double candidate = (running - t) / static_cast<double>(k + 1);
    if (k + 1 == sorted.size() || sorted[k + 1] <= candidate) {
      tau = candidate;
      break;
    }
  }
  return (v.array() - tau).max(0.0).matrix();
}

HermitianMatrix project_psd_trace(const HermitianMatrix& a, double t) {
  if (t < 0.0) throw std::invalid_argument("project_psd_trace: negative trace budget");
  const EigenDecomposition e = herm_evd(a);
  return HermitianMatrix::from_eigen(e.vectors, project_capped_simplex(e.values, t));
}

void normalize_phase(CVector& v) {
  if (v.size() == 0) return;
  Index best = 0;
  double mag = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > mag) {
      mag = m;
      best = i;
    }
  }
  if (mag <= 0.0) return;
  v *= std::conj(v(best)) / mag;
  v(best) = Complex(std::abs(v(best)), 0.0);
}

}  // namespace seeopt::linalg
