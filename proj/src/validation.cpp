// SPDX-License-Identifier: Apache-2.0

#include "seeopt/harness.hpp"

#include "seeopt/mimo.hpp"
#include "seeopt/miso.hpp"
#include "seeopt/oracles.hpp"
#include "seeopt/specfun.hpp"
#include "seeopt/stats.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace seeopt::harness {
namespace {

constexpr std::uint64_t kSuiteSeed = 0x5ee0;

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

std::vector<CheckResult> specfun_suite() {
  std::vector<CheckResult> out;
  const auto grid = log_grid(1e-3, 1e3, 601);

  double worst_z = 0.0;
  bool z_ok = true;
  for (double p : grid) {
    const double z = specfun::z_of_p(p).value;
    if (!(z >= 0.0 && z <= 1.0)) z_ok = false;
    worst_z = std::max({worst_z, -z, z - 1.0});
  }
  out.push_back({"z(p) in [0, 1]", z_ok, fmt("max violation %.3g", worst_z)});

  bool sandwich = true;
  for (double p : grid) {
    const double mid = std::expm1(specfun::exp_e1(1.0 / p).value) / p;
    const double lo = (std::sqrt(1.0 + 2.0 * p) - 1.0) / p;
    if (!(lo <= mid * (1.0 + 1e-12) && mid <= 1.0 + 1e-12)) sandwich = false;
  }
  out.push_back({"exp-integral sandwich bound", sandwich, ""});

  bool upper = true;
  for (double p : grid) {
    if (!(specfun::exp_e1(1.0 / p).value <= (p * p + p) / (1.0 + 2.0 * p) * (1.0 + 1e-12))) upper = false;
  }
  out.push_back({"e^x E1(x) upper bound", upper, ""});

  double worst_d = 0.0;
  for (double x : log_grid(0.1, 50.0, 200)) {
    const double h = 1e-5 * x;
    const double fd = (specfun::exp_e1(x + h).value - specfun::exp_e1(x - h).value) / (2.0 * h);
    const double an = specfun::exp_e1(x).value - 1.0 / x;
    worst_d = std::max(worst_d, std::abs(fd - an) / std::abs(an));
  }
  out.push_back({"derivative identity", worst_d < 1e-6, fmt("max rel err %.3g", worst_d)});

  bool mono = true;
  double prev = std::numeric_limits<double>::infinity();
  for (double p : log_grid(1e-3, 1e2, 400)) {
    const auto y = specfun::y_of_p(p);
    if (y.degenerate) continue;
    if (y.value > prev * (1.0 + 1e-9)) mono = false;
    prev = y.value;
  }
  out.push_back({"y(p) non-increasing", mono, ""});
  return out;
}

std::vector<CheckResult> miso_suite() {
  std::vector<CheckResult> out;
  model::PowerModel pm;
  pm.pmax = 10.0;
  const oracles::GridSpec grid{0.0, pm.pmax, 20001, oracles::GridSpec::Scale::linear};
  int fails[4] = {0, 0, 0, 0};
  const int n = 30;
  for (int i = 0; i < n; ++i) {
    const auto ch = model::sample_miso_channels(3, 1.0, 1.0, mix_seed(kSuiteSeed, i));
    const auto k = miso::LambdaGenCoeffs::from_channels(ch);
    auto check = [&](int slot, double got, const std::function<double(double)>& f) {
      const double ref = std::max(0.0, oracles::grid_argmax_scalar(f, grid).value);
      if (got < ref - 1e-6 * (1.0 + std::abs(ref))) ++fails[slot];
    };
    check(0, miso::solve_see_perfect(ch, pm).objective,
          [&](double p) { return std::log1p(miso::lambda_gen(k, p)) / model::kLn2 / pm.consumed(p); });
    check(1, miso::solve_skee_perfect(ch, pm).objective,
          [&](double p) { return std::log1p(miso::lambda_key(ch, p)) / model::kLn2 / pm.consumed(p); });
    const double h2 = ch.h().squaredNorm();
    check(2, miso::solve_see_statistical(ch.h(), pm).objective, [&](double p) {
      return p > 0.0 ? miso::statistical_see_numerator(h2, p) / model::kLn2 / pm.consumed(p) : 0.0;
    });
    const auto gains = miso::draw_eve_gains(ch.h(), 1000, mix_seed(kSuiteSeed + 1, i));
    check(3, miso::solve_skee_statistical(ch.h(), pm, gains).objective, [&](double p) {
      return miso::saa_key_numerator(h2, gains, p) / model::kLn2 / pm.consumed(p);
    });
  }
  const char* names[4] = {"SEE perfect >= grid", "SKEE perfect >= grid", "SEE statistical >= grid",
                          "SKEE statistical >= grid"};
  for (int s = 0; s < 4; ++s) {
    out.push_back({names[s], fails[s] == 0, fmt("%g failures", fails[s])});
  }
  return out;
}

std::vector<CheckResult> mimo_suite() {
  std::vector<CheckResult> out;
  model::PowerModel pm;
  pm.pmax = 10.0;
  bool mono = true, kkt = true, cert = true, dink = true;
  double worst_kkt = 0.0;
  for (int i = 0; i < 30; ++i) {
    const auto ch = model::sample_channels(2, 2, 2, 2.0, 1.0, mix_seed(kSuiteSeed + 2, i));
    const auto s = mimo::solve_see_perfect_sco(ch, pm);
    const auto& tr = s.report.objective_trace;
    for (std::size_t k = 1; k < tr.size(); ++k) {
      if (tr[k] < tr[k - 1] - 1e-9) mono = false;
    }
    worst_kkt = std::max(worst_kkt, s.report.kkt_residual);
    if (s.report.kkt_residual > 1e-4) kkt = false;
    for (const auto& d : s.report.dinkelbach_runs) {
      if (!d.beta_monotone || !(std::abs(d.terminal_F) < 1e-8)) dink = false;
    }
    const auto e = mimo::solve_see_perfect_eigenmode(ch, pm);
    if (!mimo::positive_eigenspace_certificate(ch, e.Q_star.hermitian())) cert = false;
  }
  out.push_back({"SCO history non-decreasing", mono, ""});
  out.push_back({"SCO KKT residual <= 1e-4", kkt, fmt("worst %.3g", worst_kkt)});
  out.push_back({"Dinkelbach monotone, |F| < 1e-8", dink, ""});
  out.push_back({"eigenmode certificate", cert, ""});

  const auto saa = mimo::SaaSampleSet::draw(2, 2, 200, kSuiteSeed + 3);
  double worst_grad = 0.0;
  for (int i = 0; i < 10; ++i) {
    linalg::RVector q(2);
    q << 0.1 + (i % 5), 0.2 + 0.5 * i;
    const auto g = mimo::saa_eve_logdet_gradient(saa, q);
    for (int k = 0; k < 2; ++k) {
      const double h = 1e-5 * (1.0 + q(k));
      linalg::RVector qp = q, qm = q;
      qp(k) += h;
      qm(k) -= h;
      const double fd = (mimo::saa_eve_logdet(saa, qp) - mimo::saa_eve_logdet(saa, qm)) / (2.0 * h);
      worst_grad = std::max(worst_grad, std::abs(fd - g(k)) / std::abs(fd));
    }
  }
  out.push_back({"SAA gradient vs finite differences", worst_grad < 1e-4,
                 fmt("max rel err %.3g", worst_grad)});
  return out;
}

std::vector<CheckResult> oracles_suite() {
  std::vector<CheckResult> out;
  const auto a = oracles::grid_argmax_scalar([](double p) { return -(p - 1.0) * (p - 1.0); },
                                             {0.0, 3.0, 3001, oracles::GridSpec::Scale::linear});
  out.push_back({"scalar grid exact on-grid optimum", a.p == 1.0 && a.value == 0.0, ""});
  const auto c = oracles::grid_argmax_scalar([](double) { return 1.0; },
                                             {0.5, 3.0, 11, oracles::GridSpec::Scale::linear});
  out.push_back({"scalar grid first-wins ties", c.p == 0.5, ""});
  const auto t = oracles::grid_argmax_cov2([](const Eigen::Matrix2cd& q) { return q.trace().real(); },
                                           1.0, 8);
  out.push_back({"cov2 grid reaches full budget", std::abs(t.value - 1.0) < 1e-12, ""});
  linalg::RVector gains(3);
  gains << 4.0, 1.0, 0.25;
  const auto w = oracles::waterfill_capacity(gains, 2.0);
  out.push_back({"water-filling spends the budget", std::abs(w.sum() - 2.0) < 1e-12,
                 fmt("sum %.15g", w.sum())});
  return out;
}

}  // namespace

std::vector<std::string> suite_names() { return {"specfun", "miso", "mimo", "oracles", "all"}; }

std::vector<CheckResult> validate_suite(const std::string& suite) {
  auto tag = [](std::vector<CheckResult> v, const std::string& prefix) {
    for (auto& r : v) r.name = prefix + ": " + r.name;
    return v;
  };
  if (suite == "specfun") return tag(specfun_suite(), "specfun");
  if (suite == "miso") return tag(miso_suite(), "miso");
  if (suite == "mimo") return tag(mimo_suite(), "mimo");
  if (suite == "oracles") return tag(oracles_suite(), "oracles");
  if (suite == "all") {
    std::vector<CheckResult> all;
    for (const char* s : {"specfun", "miso", "mimo", "oracles"}) {
      auto part = validate_suite(s);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace seeopt::harness
