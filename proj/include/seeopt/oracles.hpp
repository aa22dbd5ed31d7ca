// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "seeopt/wiretap.hpp"

#include <functional>

namespace seeopt::oracles {

using linalg::CMatrix;
using linalg::RVector;
using model::PowerModel;
using model::TransmitCovariance;

struct GridSpec {
  enum class Scale { linear, log };

  double lo = 0.0;
  double hi = 1.0;
  int points = 2;
  Scale scale = Scale::linear;

  /// Throws std::invalid_argument on points < 2, lo >= hi or log scale with lo <= 0.
  void validate() const;
  double at(int i) const;
};

struct ScalarArgmax {
  double p = 0.0;
  double value = 0.0;
};

/// Exhaustive scan (lowest index wins ties), then one 100-point linear
/// refinement between the winner's neighbours.
ScalarArgmax grid_argmax_scalar(const std::function<double(double)>& objective, const GridSpec& grid);

struct Cov2Argmax {
  TransmitCovariance Q = TransmitCovariance::zero(2);
  double value = 0.0;
};

/// Exhaustive search over Q = U diag(q1, q2) U^H,
/// U = [[cos t, -e^{-i f} sin t], [e^{i f} sin t, cos t]],
/// t in [0, pi/2], f in [0, 2 pi), q1, q2 in [0, pmax] with q1 + q2 <= pmax.
/// Each axis is split into `resolution` intervals, so doubling the
/// resolution refines the previous grid. The scan is split across `threads`
/// workers; the lowest scan index wins ties regardless of thread count.
Cov2Argmax grid_argmax_cov2(const std::function<double(const Eigen::Matrix2cd&)>& objective,
                            double pmax, int resolution, int threads = 1);

/// Classic water-filling over parallel channels with the given gains:
/// p_i = [mu_w - 1/gain_i]_+, sum p = budget. Found by sorting the gains.
RVector waterfill_capacity(const RVector& gains, double budget);

struct EnergyEfficientWaterfill {
  double power = 0.0;
  double efficiency = 0.0;  // bits/joule
  RVector powers;
};

/// max over P in [0, pmax] of C(P) / (mu P + Pc) where C is the water-filling
/// capacity of the channel H (bits), by scalar grid search with refinement.
EnergyEfficientWaterfill ee_waterfill_reference(const CMatrix& h, const PowerModel& pm,
                                                int points = 20001);

}  // namespace seeopt::oracles
