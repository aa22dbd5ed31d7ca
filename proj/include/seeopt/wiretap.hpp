// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "seeopt/hermlin.hpp"

#include <cstdint>

namespace seeopt::model {

using linalg::CMatrix;
using linalg::CVector;
using linalg::HermitianMatrix;
using linalg::Index;

inline constexpr double kLn2 = 0.69314718055994530941723212145817657;

/// Legitimate (H, N_B x N_A) and eavesdropper (G, N_E x N_A) channels.
class MimoChannelPair {
 public:
  MimoChannelPair(CMatrix h, CMatrix g);

  const CMatrix& H() const { return h_; }
  const CMatrix& G() const { return g_; }
  Index n_tx() const { return h_.cols(); }
  Index n_bob() const { return h_.rows(); }
  Index n_eve() const { return g_.rows(); }

 private:
  CMatrix h_;
  CMatrix g_;
};

/// Vector channels for single-antenna Bob and Eve. The received signal at Bob
/// is h^H x, so the equivalent MIMO channel is the 1 x N_A row h^H.
class MisoChannelPair {
 public:
  MisoChannelPair(CVector h, CVector g);

  const CVector& h() const { return h_; }
  const CVector& g() const { return g_; }
  Index n_tx() const { return h_.size(); }
  MimoChannelPair as_mimo() const;

 private:
  CVector h_;
  CVector g_;
};

/// Consumed power mu * tr(Q) + Pc with the transmit budget [pmin, pmax].
struct PowerModel {
  double mu = 1.0;
  double pc = 5.0;    // watts
  double pmax = 1.0;  // watts
  double pmin = 0.0;  // watts

  /// Throws std::invalid_argument naming the violated field.
  void validate() const;
  double consumed(double transmit_power) const { return mu * transmit_power + pc; }
};

/// Transmit covariance: Hermitian, PSD within 1e-9.
class TransmitCovariance {
 public:
  static constexpr double kPsdTolerance = 1e-9;

  explicit TransmitCovariance(HermitianMatrix q);
  explicit TransmitCovariance(const CMatrix& q) : TransmitCovariance(HermitianMatrix(q)) {}
  static TransmitCovariance zero(Index n);
  /// p w w^H
  static TransmitCovariance beam(double p, const CVector& w);

  const HermitianMatrix& hermitian() const { return q_; }
  const CMatrix& matrix() const { return q_.matrix(); }
  Index dim() const { return q_.dim(); }
  double power() const { return q_.trace(); }
  /// Throws std::invalid_argument if tr(Q) > pmax + 1e-9.
  void check_budget(const PowerModel& pm) const;

 private:
  HermitianMatrix q_;
};

struct ErgodicEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

/// Complex circularly-symmetric Gaussian matrix, per-entry variance sigma^2.
CMatrix sample_gaussian(Index rows, Index cols, double sigma, std::uint64_t seed);

MimoChannelPair sample_channels(Index n_tx, Index n_bob, Index n_eve, double sigma_h,
                                double sigma_g, std::uint64_t seed);
MisoChannelPair sample_miso_channels(Index n_tx, double sigma_h, double sigma_g,
                                     std::uint64_t seed);

// Rates in nats. The *_bits wrappers below are what callers normally report.
double secrecy_rate_nats(const MimoChannelPair& ch, const TransmitCovariance& q);
double secret_key_rate_nats(const MimoChannelPair& ch, const TransmitCovariance& q);

/// log2|I + HQH^H| - log2|I + GQG^H|. May be negative.
double secrecy_rate(const MimoChannelPair& ch, const TransmitCovariance& q);
/// log2|I + Q(H^H H + G^H G)| - log2|I + Q G^H G|. Never negative.
double secret_key_rate(const MimoChannelPair& ch, const TransmitCovariance& q);

/// Secrecy energy efficiency in bits/joule.
double see(const MimoChannelPair& ch, const TransmitCovariance& q, const PowerModel& pm);
/// Secret-key energy efficiency in bits/joule.
double skee(const MimoChannelPair& ch, const TransmitCovariance& q, const PowerModel& pm);

// MISO shorthands with Q = p w w^H, in bits.
double miso_secrecy_rate(const MisoChannelPair& ch, double p, const CVector& w);
double miso_secret_key_rate(const MisoChannelPair& ch, double p, const CVector& w);

/// Transmit-side Gram forms of a channel pair, for repeated evaluation at
/// many covariances (grid oracles, Monte Carlo). Values are in nats and equal
/// the secrecy_rate_nats / secret_key_rate_nats results by Sylvester's
/// determinant identity.
class GramMetrics {
 public:
  explicit GramMetrics(const MimoChannelPair& ch);

  double secrecy_rate_nats(const CMatrix& q) const;
  double secret_key_rate_nats(const CMatrix& q) const;
  /// Allocation-free path for two transmit antennas.
  double secrecy_rate_nats(const Eigen::Matrix2cd& q) const;

 private:
  linalg::LogDetForm bob_;
  linalg::LogDetForm eve_;
  linalg::LogDetForm key_;
  Eigen::Matrix2cd bob_root2_;
  Eigen::Matrix2cd eve_root2_;
};

/// Monte Carlo ergodic SEE / SKEE over i.i.d. unit-variance eavesdropper
/// channels (N_E x N_A). Sample i draws from mix_seed(seed, i), so results
/// do not depend on `threads`.
ErgodicEstimate ergodic_see_mc(const CMatrix& h, Index n_eve, const TransmitCovariance& q,
                               const PowerModel& pm, int n_samples, std::uint64_t seed,
                               int threads = 1);
ErgodicEstimate ergodic_skee_mc(const CMatrix& h, Index n_eve, const TransmitCovariance& q,
                                const PowerModel& pm, int n_samples, std::uint64_t seed,
                                int threads = 1);

}  // namespace seeopt::model
