// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace seeopt::linalg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Largest dimension accepted by HermitianMatrix. The solvers target
/// desk-scale antenna counts.
inline constexpr Index kMaxDim = 16;

/// Dense complex Hermitian matrix. Symmetry is enforced at construction by
/// replacing the input with (A + A^H) / 2, so entry (i, j) is exactly the
/// conjugate of entry (j, i) and the diagonal is exactly real.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& a);

  static HermitianMatrix identity(Index n);
  static HermitianMatrix zero(Index n);
  /// v v^H
  static HermitianMatrix outer(const CVector& v);
  /// A^H A, the Gram matrix of a (possibly rectangular) channel matrix.
  static HermitianMatrix gram(const CMatrix& a);
  /// U diag(d) U^H
  static HermitianMatrix from_eigen(const CMatrix& u, const RVector& d);

  Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  const Complex& operator()(Index i, Index j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;

 private:
  CMatrix m_;
};

/// Eigenvalues sorted descending; eigenvector columns paired with them.
struct EigenDecomposition {
  RVector values;
  CMatrix vectors;
};

/// Full Hermitian eigendecomposition. Throws std::runtime_error if the
/// iterative solver fails to converge.
EigenDecomposition herm_evd(const HermitianMatrix& a);

/// The (at most) two non-zero eigenvalues of x x^H - y y^H, largest first.
struct Rank2Eigs {
  double largest = 0.0;
  double smallest = 0.0;
};
Rank2Eigs rank2_eigs(const CVector& x, const CVector& y);

/// ||x||^2 ||y||^2 - |y^H x|^2 through the Lagrange identity, so the result
/// is non-negative without cancellation.
double cauchy_schwarz_gap(const CVector& x, const CVector& y);

/// Maximum generalized eigenpair of the pencil (A, B), B positive definite.
struct GenEigPair {
  double value = 0.0;
  CVector vector;  // unit norm, largest-magnitude entry real positive
};
GenEigPair gen_max_eigpair(const HermitianMatrix& a, const HermitianMatrix& b);

/// Principal square root of a PSD matrix (negative eigenvalues clipped).
HermitianMatrix psd_sqrt(const HermitianMatrix& a);

/// log|I + X| in nats for PSD X, via Cholesky with an EVD fallback.
double logdet_identity_plus(const HermitianMatrix& x);

/// log|I + S^{1/2} Q S^{1/2}| (= log|I + QS|) in nats. Throws
/// std::invalid_argument on dimension mismatch.
double logdet_ipq(const HermitianMatrix& s, const HermitianMatrix& q);

/// Precomputed form of Q -> log|I + S^{1/2} Q S^{1/2}| for repeated
/// evaluation with a fixed S, including its gradient with respect to
/// Hermitian Q: S^{1/2} (I + S^{1/2} Q S^{1/2})^{-1} S^{1/2}.
class LogDetForm {
 public:
  LogDetForm() = default;
  explicit LogDetForm(const HermitianMatrix& s);

  Index dim() const { return root_.rows(); }
  const HermitianMatrix& weight() const { return s_; }
  double value(const CMatrix& q) const;
  /// Value and gradient in one factorization.
  double value_and_gradient(const CMatrix& q, CMatrix& grad) const;

 private:
  HermitianMatrix s_;
  CMatrix root_;
};

/// Frobenius projection onto {Q PSD, tr Q <= t}.
HermitianMatrix project_psd_trace(const HermitianMatrix& a, double t);

/// Euclidean projection of v onto {x >= 0, sum x <= t}.
RVector project_capped_simplex(const RVector& v, double t);

/// Rotates v by a global phase so its largest-magnitude entry is real and
/// positive. Zero vectors are left alone.
void normalize_phase(CVector& v);

/// Hermitian part (A + A^H) / 2 as a plain matrix.
inline CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

/// Re tr(A^H B), the real inner product on complex matrices.
inline double inner(const CMatrix& a, const CMatrix& b) {
  return (a.adjoint() * b).trace().real();
}

}  // namespace seeopt::linalg
