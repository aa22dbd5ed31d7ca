// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "seeopt/report.hpp"
#include "seeopt/wiretap.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace seeopt::miso {

using linalg::CVector;
using model::MisoChannelPair;
using model::PowerModel;

struct MisoSolution {
  double p_star = 0.0;  // watts
  CVector w_star;       // unit norm
  double objective = 0.0;  // bits/joule
  SolveReport report;
};

/// Channel statistics entering the closed-form largest generalized
/// eigenvalue 1 + lambda_Q(p) of (I + p hh^H, I + p gg^H).
struct LambdaGenCoeffs {
  double omega = 0.0;  // energy of h orthogonal to g
  double g = 0.0;      // ||g||^2
  double c = 0.0;      // |g^H h|^2
  double alpha = 0.0;  // c / g - g

  static LambdaGenCoeffs from_channels(const MisoChannelPair& ch);
};

/// lambda_Q(p) = (A + sqrt(A^2 + B)) / 2 with A = alpha f + omega p,
/// B = 4 g omega p f and f(p) = p / (1 + p g).
double lambda_gen(const LambdaGenCoeffs& k, double p);
double lambda_gen_derivative(const LambdaGenCoeffs& k, double p);

/// p h^H (I + p gg^H)^{-1} h in closed form.
double lambda_key(const MisoChannelPair& ch, double p);
double lambda_key_derivative(const MisoChannelPair& ch, double p);

/// ln(1 + p ||h||^2) - e^{1/p} E1(1/p): the ergodic secrecy rate in nats
/// with a matched beamformer and unit-variance Rayleigh eavesdropper.
double statistical_see_numerator(double h_norm2, double p);
double statistical_see_numerator_derivative(double h_norm2, double p);
/// Second derivative z(p)/p^2 - ||h||^4 / (1 + p ||h||^2)^2.
double statistical_see_numerator_curvature(double h_norm2, double p);

/// Normalized eavesdropper gains |h^H g_i|^2 / ||h||^2 for g_i ~ CN(0, I),
/// sample i drawn from mix_seed(seed, i).
std::vector<double> draw_eve_gains(const CVector& h, int n_samples, std::uint64_t seed);

/// Sample average of ln(1 + p ||h||^2 / (1 + p c_i)) and its derivative.
double saa_key_numerator(double h_norm2, std::span<const double> gains, double p);
double saa_key_numerator_derivative(double h_norm2, std::span<const double> gains, double p);

/// Lower end of the pseudo-concavity certificate interval for the
/// statistical SEE problem.
inline constexpr double kCertificateFloor = 1e-6;
/// Points in the log-spaced fallback grid when the certificate fails.
inline constexpr int kFallbackGridPoints = 10000;

MisoSolution solve_see_perfect(const MisoChannelPair& ch, const PowerModel& pm);
MisoSolution solve_skee_perfect(const MisoChannelPair& ch, const PowerModel& pm);
MisoSolution solve_see_statistical(const CVector& h, const PowerModel& pm);
MisoSolution solve_skee_statistical(const CVector& h, const PowerModel& pm, int n_samples,
                                    std::uint64_t seed);
/// Same, with an explicit (common random numbers) gain sample set.
MisoSolution solve_skee_statistical(const CVector& h, const PowerModel& pm,
                                    std::span<const double> gains);

}  // namespace seeopt::miso
