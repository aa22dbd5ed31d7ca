// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "seeopt/hermlin.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>

namespace testsupport {

using seeopt::linalg::CMatrix;
using seeopt::linalg::CVector;
using seeopt::linalg::Index;

inline CMatrix random_cmatrix(std::mt19937_64& rng, Index rows, Index cols, double sigma = 1.0) {
  std::normal_distribution<double> n(0.0, sigma / std::sqrt(2.0));
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = {n(rng), n(rng)};
  return m;
}

inline CVector random_cvector(std::mt19937_64& rng, Index n, double sigma = 1.0) {
  return random_cmatrix(rng, n, 1, sigma).col(0);
}

// log det via LU, independent of the library's Cholesky path.
inline double logdet_lu(const CMatrix& m) { return std::log(std::abs(m.partialPivLu().determinant())); }

// Random PSD matrix with trace uniformly in [0, t].
inline CMatrix random_feasible(std::mt19937_64& rng, Index n, double t) {
  const CMatrix a = random_cmatrix(rng, n, n);
  CMatrix q = a * a.adjoint();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  q *= t * u(rng) / q.trace().real();
  return 0.5 * (q + q.adjoint());
}

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testsupport
