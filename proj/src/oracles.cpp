// SPDX-License-Identifier: Apache-2.0

#include "seeopt/oracles.hpp"

#include "seeopt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace seeopt::oracles {

void GridSpec::validate() const {
  if (points < 2) throw std::invalid_argument("GridSpec: points must be >= 2");
  if (!(lo < hi)) throw std::invalid_argument("GridSpec: lo must be < hi");
  if (scale == Scale::log && !(lo > 0.0)) {
    throw std::invalid_argument("GridSpec: log scale requires lo > 0");
  }
}

double GridSpec::at(int i) const {
  if (i == 0) return lo;
  if (i == points - 1) return hi;
  const double t = static_cast<double>(i) / (points - 1);
  if (scale == Scale::log) return lo * std::pow(hi / lo, t);
  return lo + t * (hi - lo);
}

ScalarArgmax grid_argmax_scalar(const std::function<double(double)>& objective, const GridSpec& grid) {
  grid.validate();
  int best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.points; ++i) {
    const double v = objective(grid.at(i));
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  ScalarArgmax out{grid.at(best), best_v};
  const double a = grid.at(std::max(0, best - 1));
  const double b = grid.at(std::min(grid.points - 1, best + 1));
  for (int j = 0; j < 100; ++j) {
    const double p = a + (b - a) * j / 99.0;
    const double v = objective(p);
    if (v > out.value) out = {p, v};
  }
  return out;
}

Cov2Argmax grid_argmax_cov2(const std::function<double(const Eigen::Matrix2cd&)>& objective,
                            double pmax, int resolution, int threads) {
  if (resolution < 8) throw std::invalid_argument("grid_argmax_cov2: resolution must be >= 8");
  if (!(pmax > 0.0)) throw std::invalid_argument("grid_argmax_cov2: pmax must be > 0");
  const int r = resolution;
  const double half_pi = std::numbers::pi / 2.0;
  const double two_pi = 2.0 * std::numbers::pi;

  struct Best {
    double value = -std::numeric_limits<double>::infinity();
    Eigen::Matrix2cd q = Eigen::Matrix2cd::Zero();
  };
  // One work item per (theta, phi) pair, in scan order.
  const std::size_t items = static_cast<std::size_t>(r + 1) * static_cast<std::size_t>(r);
  std::vector<Best> per_item(items);
  parallel_for(items, threads, [&](std::size_t idx) {
    const int it = static_cast<int>(idx / r);
    const int ip = static_cast<int>(idx % r);
    const double t = half_pi * it / r;
    const double f = two_pi * ip / r;
    const std::complex<double> e(std::cos(f), std::sin(f));
    Eigen::Matrix2cd u;
    u << std::cos(t), -std::conj(e) * std::sin(t), e * std::sin(t), std::cos(t);
    Best best;
    for (int i1 = 0; i1 <= r; ++i1) {
      for (int i2 = 0; i1 + i2 <= r; ++i2) {
        const double q1 = pmax * i1 / r;
        const double q2 = pmax * i2 / r;
        Eigen::Matrix2cd q = u * Eigen::Vector2d(q1, q2).cast<std::complex<double>>().asDiagonal() *
                             u.adjoint();
        q(0, 1) = 0.5 * (q(0, 1) + std::conj(q(1, 0)));
        q(1, 0) = std::conj(q(0, 1));
        q(0, 0) = q(0, 0).real();
        q(1, 1) = q(1, 1).real();
        const double v = objective(q);
        if (v > best.value) {
          best.value = v;
          best.q = q;
        }
      }
    }
    per_item[idx] = best;
  });
  Best best;
  for (const auto& b : per_item) {
    if (b.value > best.value) best = b;
  }
  Cov2Argmax out;
  out.Q = TransmitCovariance(linalg::CMatrix(best.q));
  out.value = best.value;
  return out;
}

RVector waterfill_capacity(const RVector& gains, double budget) {
  const auto n = gains.size();
  RVector p = RVector::Zero(n);
  std::vector<linalg::Index> order;
  for (linalg::Index i = 0; i < n; ++i) {
    if (gains(i) > 0.0) order.push_back(i);
  }
  if (order.empty() || !(budget > 0.0)) return p;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return gains(a) > gains(b); });
  // Use the k strongest channels; the water level is (budget + sum 1/g) / k.
  double inv_sum = 0.0;
  double level = 0.0;
  std::size_t active = 0;
  for (std::size_t k = 1; k <= order.size(); ++k) {
    const double cand_sum = inv_sum + 1.0 / gains(order[k - 1]);
    const double cand_level = (budget + cand_sum) / static_cast<double>(k);
    if (cand_level <= 1.0 / gains(order[k - 1])) break;
    inv_sum = cand_sum;
    level = cand_level;
    active = k;
  }
  for (std::size_t k = 0; k < active; ++k) {
    p(order[k]) = std::max(0.0, level - 1.0 / gains(order[k]));
  }
  return p;
}

EnergyEfficientWaterfill ee_waterfill_reference(const CMatrix& h, const PowerModel& pm, int points) {
  pm.validate();
  const auto ev = linalg::herm_evd(linalg::HermitianMatrix::gram(h));
  const RVector gains = ev.values.cwiseMax(0.0);
  auto capacity_bits = [&](double p) {
    const RVector w = waterfill_capacity(gains, p);
    double c = 0.0;
    for (linalg::Index i = 0; i < gains.size(); ++i) c += std::log1p(w(i) * gains(i));
    return c / model::kLn2;
  };
  GridSpec grid{0.0, pm.pmax, points, GridSpec::Scale::linear};
  const auto best =
      grid_argmax_scalar([&](double p) { return capacity_bits(p) / pm.consumed(p); }, grid);
  EnergyEfficientWaterfill out;
  out.power = best.p;
  out.efficiency = best.value;
  out.powers = waterfill_capacity(gains, best.p);
  return out;
}

}  // namespace seeopt::oracles
