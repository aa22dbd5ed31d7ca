// SPDX-License-Identifier: Apache-2.0

#include "seeopt/wiretap.hpp"

#include "seeopt/stats.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace seeopt::model {
namespace {

void require_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

void require_tx_dim(const MimoChannelPair& ch, const TransmitCovariance& q) {
  if (q.dim() != ch.n_tx()) {
    throw std::invalid_argument("covariance dimension " + std::to_string(q.dim()) +
                                " does not match " + std::to_string(ch.n_tx()) +
                                " transmit antennas");
  }
}

double logdet_2x2(const Eigen::Matrix2cd& m) {
  // det of a 2x2 Hermitian positive definite matrix
  const double det = m(0, 0).real() * m(1, 1).real() - std::norm(m(0, 1));
  return std::log(det);
}

Eigen::Matrix2cd fixed2(const CMatrix& m) {
  Eigen::Matrix2cd out;
  if (m.rows() == 2 && m.cols() == 2) out = m;
  else out.setZero();
  return out;
}

ErgodicEstimate ergodic_mc(const CMatrix& h, Index n_eve, const TransmitCovariance& q,
                           const PowerModel& pm, int n_samples, std::uint64_t seed, int threads,
                           bool key_rate) {
  if (n_samples < 2) throw std::invalid_argument("ergodic estimate needs n_samples >= 2");
  if (n_eve < 1) throw std::invalid_argument("ergodic estimate needs n_eve >= 1");
  pm.validate();
  std::vector<double> values(static_cast<std::size_t>(n_samples));
  const double denom = pm.consumed(q.power());
  parallel_for(values.size(), threads, [&](std::size_t i) {
    const CMatrix g = sample_gaussian(n_eve, h.cols(), 1.0, mix_seed(seed, i));
    const MimoChannelPair ch(h, g);
    const double rate = key_rate ? secret_key_rate(ch, q) : secrecy_rate(ch, q);
    values[i] = rate / denom;
  });
  const SampleSummary s = summarize(values);
  return {s.mean, s.std_error, n_samples, seed};
}

}  // namespace

MimoChannelPair::MimoChannelPair(CMatrix h, CMatrix g) : h_(std::move(h)), g_(std::move(g)) {
  if (h_.cols() != g_.cols()) {
    throw std::invalid_argument("MimoChannelPair: H has " + std::to_string(h_.cols()) +
                                " columns but G has " + std::to_string(g_.cols()));
  }
  if (h_.cols() < 1 || h_.rows() < 1 || g_.rows() < 1) {
    throw std::invalid_argument("MimoChannelPair: empty channel");
  }
  require_finite(h_, "MimoChannelPair H");
  require_finite(g_, "MimoChannelPair G");
}

MisoChannelPair::MisoChannelPair(CVector h, CVector g) : h_(std::move(h)), g_(std::move(g)) {
  if (h_.size() != g_.size() || h_.size() < 1) {
    throw std::invalid_argument("MisoChannelPair: h and g must share a length >= 1");
  }
  require_finite(h_, "MisoChannelPair h");
  require_finite(g_, "MisoChannelPair g");
}

MimoChannelPair MisoChannelPair::as_mimo() const {
  return MimoChannelPair(h_.adjoint(), g_.adjoint());
}

void PowerModel::validate() const {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::invalid_argument("PowerModel.mu must be >= 0");
  if (!(pc > 0.0) || !std::isfinite(pc)) throw std::invalid_argument("PowerModel.pc must be > 0");
  if (!(pmax > 0.0) || !std::isfinite(pmax)) {
    throw std::invalid_argument("PowerModel.pmax must be > 0");
  }
  if (!(pmin >= 0.0) || !(pmin < pmax)) {
    throw std::invalid_argument("PowerModel.pmin must satisfy 0 <= pmin < pmax");
  }
}

TransmitCovariance::TransmitCovariance(HermitianMatrix q) : q_(std::move(q)) {
  const linalg::EigenDecomposition e = linalg::herm_evd(q_);
  const double floor = e.values(e.values.size() - 1);
  if (floor < -kPsdTolerance * std::max(1.0, e.values(0))) {
    throw std::invalid_argument("TransmitCovariance: matrix is not PSD (min eigenvalue " +
                                std::to_string(floor) + ")");
  }
}

TransmitCovariance TransmitCovariance::zero(Index n) {
  return TransmitCovariance(HermitianMatrix::zero(n));
}

TransmitCovariance TransmitCovariance::beam(double p, const CVector& w) {
  if (p < 0.0) throw std::invalid_argument("TransmitCovariance::beam: negative power");
  return TransmitCovariance(HermitianMatrix::outer(w) * p);
}

void TransmitCovariance::check_budget(const PowerModel& pm) const {
  if (power() > pm.pmax + kPsdTolerance) {
    throw std::invalid_argument("TransmitCovariance: trace " + std::to_string(power()) +
                                " exceeds pmax " + std::to_string(pm.pmax));
  }
}

CMatrix sample_gaussian(Index rows, Index cols, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma / std::sqrt(2.0));
  CMatrix m(rows, cols);
  // Column-major fill so the draw order is fixed.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = {re, im};
    }
  }
  return m;
}

MimoChannelPair sample_channels(Index n_tx, Index n_bob, Index n_eve, double sigma_h,
                                double sigma_g, std::uint64_t seed) {
  if (n_tx < 1 || n_bob < 1 || n_eve < 1) {
    throw std::invalid_argument("sample_channels: antenna counts must be >= 1");
  }
  if (!(sigma_h > 0.0) || !(sigma_g > 0.0)) {
    throw std::invalid_argument("sample_channels: sigma_h and sigma_g must be > 0");
  }
  return MimoChannelPair(sample_gaussian(n_bob, n_tx, sigma_h, mix_seed(seed, 0)),
                         sample_gaussian(n_eve, n_tx, sigma_g, mix_seed(seed, 1)));
}

MisoChannelPair sample_miso_channels(Index n_tx, double sigma_h, double sigma_g,
                                     std::uint64_t seed) {
  const MimoChannelPair ch = sample_channels(n_tx, 1, 1, sigma_h, sigma_g, seed);
  return MisoChannelPair(ch.H().row(0).adjoint(), ch.G().row(0).adjoint());
}

double secrecy_rate_nats(const MimoChannelPair& ch, const TransmitCovariance& q) {
  require_tx_dim(ch, q);
  const CMatrix& h = ch.H();
  const CMatrix& g = ch.G();
  return linalg::logdet_identity_plus(HermitianMatrix(h * q.matrix() * h.adjoint())) -
         linalg::logdet_identity_plus(HermitianMatrix(g * q.matrix() * g.adjoint()));
}

double secret_key_rate_nats(const MimoChannelPair& ch, const TransmitCovariance& q) {
  require_tx_dim(ch, q);
  const HermitianMatrix eve = HermitianMatrix::gram(ch.G());
  const HermitianMatrix both = HermitianMatrix::gram(ch.H()) + eve;
  // Clamp roundoff: the difference is non-negative since both >= eve.
  return std::max(0.0, linalg::logdet_ipq(both, q.hermitian()) -
                           linalg::logdet_ipq(eve, q.hermitian()));
}

double secrecy_rate(const MimoChannelPair& ch, const TransmitCovariance& q) {
  return secrecy_rate_nats(ch, q) / kLn2;
}

double secret_key_rate(const MimoChannelPair& ch, const TransmitCovariance& q) {
  return secret_key_rate_nats(ch, q) / kLn2;
}

double see(const MimoChannelPair& ch, const TransmitCovariance& q, const PowerModel& pm) {
  return secrecy_rate(ch, q) / pm.consumed(q.power());
}

double skee(const MimoChannelPair& ch, const TransmitCovariance& q, const PowerModel& pm) {
  return secret_key_rate(ch, q) / pm.consumed(q.power());
}

double miso_secrecy_rate(const MisoChannelPair& ch, double p, const CVector& w) {
  const double bob = std::norm(ch.h().dot(w));
  const double eve = std::norm(ch.g().dot(w));
  return (std::log1p(p * bob) - std::log1p(p * eve)) / kLn2;
}

double miso_secret_key_rate(const MisoChannelPair& ch, double p, const CVector& w) {
  const double bob = std::norm(ch.h().dot(w));
  const double eve = std::norm(ch.g().dot(w));
  return std::log1p(p * bob / (1.0 + p * eve)) / kLn2;
}

GramMetrics::GramMetrics(const MimoChannelPair& ch)
    : bob_(HermitianMatrix::gram(ch.H())),
      eve_(HermitianMatrix::gram(ch.G())),
      key_(HermitianMatrix::gram(ch.H()) + HermitianMatrix::gram(ch.G())) {
  bob_root2_ = fixed2(linalg::psd_sqrt(bob_.weight()).matrix());
  eve_root2_ = fixed2(linalg::psd_sqrt(eve_.weight()).matrix());
}

double GramMetrics::secrecy_rate_nats(const CMatrix& q) const {
  return bob_.value(q) - eve_.value(q);
}

double GramMetrics::secret_key_rate_nats(const CMatrix& q) const {
  return std::max(0.0, key_.value(q) - eve_.value(q));
}

double GramMetrics::secrecy_rate_nats(const Eigen::Matrix2cd& q) const {
  if (bob_.dim() != 2) throw std::invalid_argument("GramMetrics: 2x2 path needs two antennas");
  const Eigen::Matrix2cd i2 = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd mb = i2 + bob_root2_ * q * bob_root2_;
  const Eigen::Matrix2cd me = i2 + eve_root2_ * q * eve_root2_;
  return logdet_2x2(mb) - logdet_2x2(me);
}

ErgodicEstimate ergodic_see_mc(const CMatrix& h, Index n_eve, const TransmitCovariance& q,
                               const PowerModel& pm, int n_samples, std::uint64_t seed,
                               int threads) {
  return ergodic_mc(h, n_eve, q, pm, n_samples, seed, threads, false);
}

ErgodicEstimate ergodic_skee_mc(const CMatrix& h, Index n_eve, const TransmitCovariance& q,
                                const PowerModel& pm, int n_samples, std::uint64_t seed,
                                int threads) {
  return ergodic_mc(h, n_eve, q, pm, n_samples, seed, threads, true);
}

}  // namespace seeopt::model
