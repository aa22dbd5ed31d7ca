// SPDX-License-Identifier: Apache-2.0

#include "seeopt/harness.hpp"

#include "seeopt/mimo.hpp"
#include "seeopt/miso.hpp"
#include "seeopt/oracles.hpp"
#include "seeopt/stats.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace seeopt::harness {
namespace {

using json = nlohmann::json;
using model::PowerModel;

const std::set<std::string> kTolKeys = {"saa_count", "oracle_resolution", "sco_eps",
                                        "sco_kkt_tol", "sco_max_outer", "pg_tol"};

std::vector<double> default_grid() {
  std::vector<double> g(10);
  for (int i = 0; i < 10; ++i) g[i] = -10.0 + 30.0 * i / 9.0;
  return g;
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw std::invalid_argument("config field '" + field + "': " + what);
}

bool is_miso(const ExperimentConfig& c) { return c.nB == 1 && c.nE == 1; }

std::string sigma_tag(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", s);
  return buf;
}

}  // namespace

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::fig3: return "fig3";
    case Scenario::fig4: return "fig4";
    case Scenario::fig5: return "fig5";
    case Scenario::fig6: return "fig6";
    case Scenario::fig7: return "fig7";
    case Scenario::custom: return "custom";
  }
  return "?";
}

const char* to_string(Metric m) {
  switch (m) {
    case Metric::see: return "see";
    case Metric::rate: return "rate";
    case Metric::skee: return "skee";
  }
  return "?";
}

std::optional<Scenario> scenario_from_string(const std::string& s) {
  for (Scenario c : {Scenario::fig3, Scenario::fig4, Scenario::fig5, Scenario::fig6,
                     Scenario::fig7, Scenario::custom}) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

double ExperimentConfig::tol(const std::string& key, double fallback) const {
  const auto it = solver_tols.find(key);
  return it == solver_tols.end() ? fallback : it->second;
}

void ExperimentConfig::validate() const {
  auto dims_ok = [](int n) { return n >= 1 && n <= linalg::kMaxDim; };
  if (!dims_ok(nA)) field_error("nA", "must be in [1, 16]");
  if (!dims_ok(nB)) field_error("nB", "must be in [1, 16]");
  if (!dims_ok(nE)) field_error("nE", "must be in [1, 16]");
  if (!(sigma_h > 0.0) || !std::isfinite(sigma_h)) field_error("sigma_h", "must be > 0");
  if (!(sigma_g > 0.0) || !std::isfinite(sigma_g)) field_error("sigma_g", "must be > 0");
  if (!(mu >= 0.0) || !std::isfinite(mu)) field_error("mu", "must be >= 0");
  if (!(Pc > 0.0) || !std::isfinite(Pc)) field_error("Pc", "must be > 0");
  if (!(Pmin >= 0.0) || !std::isfinite(Pmin)) field_error("Pmin", "must be >= 0");
  if (pmax_grid_dbw.empty()) field_error("pmax_grid_dbw", "must be non-empty");
  for (std::size_t i = 0; i < pmax_grid_dbw.size(); ++i) {
    if (!std::isfinite(pmax_grid_dbw[i])) field_error("pmax_grid_dbw", "entries must be finite");
    if (i > 0 && !(pmax_grid_dbw[i] > pmax_grid_dbw[i - 1])) {
      field_error("pmax_grid_dbw", "must be strictly increasing");
    }
  }
  if (!(Pmin < std::pow(10.0, pmax_grid_dbw.front() / 10.0))) {
    field_error("Pmin", "must be below the smallest Pmax of the grid");
  }
  if (trials < 1) field_error("trials", "must be >= 1");
  if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz)) field_error("bandwidth_hz", "must be > 0");
  for (const auto& [k, v] : solver_tols) {
    if (!kTolKeys.count(k)) field_error("solver_tols", "unknown key '" + k + "'");
    if (!(v > 0.0) || !std::isfinite(v)) field_error("solver_tols", "'" + k + "' must be > 0");
  }
  switch (scenario) {
    case Scenario::fig3:
    case Scenario::fig4:
      if (!is_miso(*this)) field_error("nB", "fig3/fig4 require nB = nE = 1");
      break;
    case Scenario::fig6:
      if (sigma_h_sweep.empty()) field_error("sigma_h_sweep", "must be non-empty for fig6");
      for (double s : sigma_h_sweep) {
        if (!(s > 0.0) || !std::isfinite(s)) field_error("sigma_h_sweep", "entries must be > 0");
      }
      if (is_miso(*this)) field_error("nB", "fig6 requires a MIMO configuration");
      break;
    case Scenario::fig7:
      if (nA != 2) field_error("nA", "fig7 requires nA = 2 (exhaustive oracle)");
      break;
    default:
      break;
  }
  if (scenario == Scenario::fig5 && is_miso(*this)) {
    field_error("nB", "fig5 requires a MIMO configuration");
  }
  if (tol("oracle_resolution", 32) < 8) field_error("solver_tols", "'oracle_resolution' must be >= 8");
}

ExperimentConfig preset(Scenario s) {
  ExperimentConfig c;
  c.scenario = s;
  c.pmax_grid_dbw = default_grid();
  c.trials = 1000;
  c.mu = 1.0;
  c.Pc = 5.0;
  switch (s) {
    case Scenario::fig3:
    case Scenario::fig4:
    case Scenario::custom:
      c.nA = 3;
      c.nB = 1;
      c.nE = 1;
      c.sigma_h = 1.0;
      c.sigma_g = 1.0;
      c.metric = s == Scenario::fig4 ? Metric::rate : Metric::see;
      break;
    case Scenario::fig5:
    case Scenario::fig6:
    case Scenario::fig7:
      c.nA = 2;
      c.nB = 2;
      c.nE = 2;
      c.sigma_h = 2.0;
      c.sigma_g = 1.0;
      c.metric = s == Scenario::fig7 ? Metric::rate : Metric::see;
      if (s == Scenario::fig6) c.sigma_h_sweep = {2.0, 6.0, 10.0};
      break;
  }
  return c;
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be a JSON object");

  Scenario sc = Scenario::custom;
  if (j.contains("scenario")) {
    if (!j["scenario"].is_string()) field_error("scenario", "must be a string");
    const auto parsed = scenario_from_string(j["scenario"].get<std::string>());
    if (!parsed) field_error("scenario", "unknown scenario '" + j["scenario"].get<std::string>() + "'");
    sc = *parsed;
  }
  ExperimentConfig c = preset(sc);

  auto number = [&](const std::string& key, const json& v) {
    if (!v.is_number()) field_error(key, "must be a number");
    return v.get<double>();
  };
  auto integer = [&](const std::string& key, const json& v) {
    if (!v.is_number_integer()) field_error(key, "must be an integer");
    return v.get<long long>();
  };
  auto number_list = [&](const std::string& key, const json& v) {
    if (!v.is_array()) field_error(key, "must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) out.push_back(number(key, e));
    return out;
  };

  for (const auto& [key, v] : j.items()) {
    if (key == "scenario") continue;
    if (key == "nA") c.nA = static_cast<int>(integer(key, v));
    else if (key == "nB") c.nB = static_cast<int>(integer(key, v));
    else if (key == "nE") c.nE = static_cast<int>(integer(key, v));
    else if (key == "sigma_h") c.sigma_h = number(key, v);
    else if (key == "sigma_g") c.sigma_g = number(key, v);
    else if (key == "mu") c.mu = number(key, v);
    else if (key == "Pc") c.Pc = number(key, v);
    else if (key == "Pmin") c.Pmin = number(key, v);
    else if (key == "pmax_grid_dbw") c.pmax_grid_dbw = number_list(key, v);
    else if (key == "sigma_h_sweep") c.sigma_h_sweep = number_list(key, v);
    else if (key == "bandwidth_hz") c.bandwidth_hz = number(key, v);
    else if (key == "trials") {
      const long long t = integer(key, v);
      if (t < 1 || t > 100000000) field_error(key, "must be >= 1");
      c.trials = static_cast<int>(t);
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) field_error(key, "must be a non-negative integer");
      c.seed = v.get<std::uint64_t>();
    } else if (key == "metric") {
      if (!v.is_string()) field_error(key, "must be a string");
      const std::string m = v.get<std::string>();
      if (sc != Scenario::custom) field_error(key, "only configurable for scenario custom");
      if (m == "see") c.metric = Metric::see;
      else if (m == "rate") c.metric = Metric::rate;
      else if (m == "skee") c.metric = Metric::skee;
      else field_error(key, "must be one of see, rate, skee");
    } else if (key == "solver_tols") {
      if (!v.is_object()) field_error(key, "must be an object");
      for (const auto& [tk, tv] : v.items()) {
        if (!kTolKeys.count(tk)) field_error(key, "unknown key '" + tk + "'");
        c.solver_tols[tk] = number(key + "." + tk, tv);
      }
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// ---------------------------------------------------------------------------

std::vector<std::string> curve_ids(const ExperimentConfig& cfg) {
  if (cfg.scenario == Scenario::fig6) {
    std::vector<std::string> ids;
    for (double s : cfg.sigma_h_sweep) {
      const std::string t = sigma_tag(s);
      ids.push_back("alg1_sh" + t);
      ids.push_back("eigenmode_sh" + t);
      ids.push_back("rel_gap_sh" + t);
    }
    return ids;
  }
  if (cfg.scenario == Scenario::fig7) return {"rate_alg1", "oracle", "see_alg1"};
  if (is_miso(cfg)) {
    if (cfg.metric == Metric::skee) return {"skee_perfect", "skee_statistical", "max_power"};
    return {"see_perfect", "rate_perfect", "see_statistical", "max_power"};
  }
  if (cfg.metric == Metric::skee) return {"skee_perfect", "skee_statistical"};
  return {"alg1", "eigenmode", "rate_alg1", "statistical"};
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, int trial) {
  return mix_seed(cfg.seed, static_cast<std::uint64_t>(trial));
}

namespace {

using Values = std::vector<std::optional<double>>;

struct TrialContext {
  const ExperimentConfig& cfg;
  std::uint64_t seed;
  std::vector<std::string>* errors;
};

// Runs f for one curve slot, recording failures instead of propagating.
void guarded(Values& out, std::size_t slot, TrialContext& ctx, const std::function<double()>& f) {
  try {
    const double v = f();
    if (!std::isfinite(v)) throw std::runtime_error("non-finite metric");
    out[slot] = v;
  } catch (const std::exception& e) {
    out[slot].reset();
    ctx.errors->push_back(e.what());
  }
}

PowerModel power_model(const ExperimentConfig& cfg, double pmax_dbw) {
  PowerModel pm;
  pm.mu = cfg.mu;
  pm.pc = cfg.Pc;
  pm.pmax = std::pow(10.0, pmax_dbw / 10.0);
  pm.pmin = cfg.Pmin;
  pm.validate();
  return pm;
}

PowerModel rate_model(const PowerModel& pm) {
  PowerModel r = pm;
  r.mu = 0.0;
  r.pc = 1.0;
  return r;
}

mimo::ScoOptions sco_options(const ExperimentConfig& cfg) {
  mimo::ScoOptions o;
  o.eps = cfg.tol("sco_eps", o.eps);
  o.kkt_tol = cfg.tol("sco_kkt_tol", o.kkt_tol);
  o.max_outer = static_cast<int>(cfg.tol("sco_max_outer", o.max_outer));
  return o;
}

mimo::PgOptions pg_options(const ExperimentConfig& cfg) {
  mimo::PgOptions o;
  o.tol = cfg.tol("pg_tol", o.tol);
  return o;
}

Values eval_miso(TrialContext& ctx, const std::vector<double>& grid) {
  const auto& cfg = ctx.cfg;
  const auto ch = model::sample_miso_channels(cfg.nA, cfg.sigma_h, cfg.sigma_g, ctx.seed);
  const auto mimo_ch = ch.as_mimo();
  const double scale = cfg.bandwidth_hz / 1e6;
  const std::size_t nc = curve_ids(cfg).size();
  const std::uint64_t saa_seed = mix_seed(ctx.seed, 2);
  const int saa_count = std::max(1000, static_cast<int>(cfg.tol("saa_count", 1000)));
  Values out(grid.size() * nc);

  auto metric = [&](double p, const linalg::CVector& w, const PowerModel& pm) {
    const auto q = model::TransmitCovariance::beam(p, w);
    switch (cfg.metric) {
      case Metric::see: return model::see(mimo_ch, q, pm) * scale;
      case Metric::rate: return model::secrecy_rate(mimo_ch, q);
      case Metric::skee: return model::skee(mimo_ch, q, pm) * scale;
    }
    return 0.0;
  };
  const linalg::CVector matched = ch.h().norm() > 0.0 ? linalg::CVector(ch.h() / ch.h().norm())
                                                      : linalg::CVector(linalg::CVector::Unit(cfg.nA, 0));
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const PowerModel pm = power_model(cfg, grid[gi]);
    const std::size_t base = gi * nc;
    if (cfg.metric == Metric::skee) {
      guarded(out, base + 0, ctx, [&] {
        const auto s = miso::solve_skee_perfect(ch, pm);
        return metric(s.p_star, s.w_star, pm);
      });
      guarded(out, base + 1, ctx, [&] {
        const auto s = miso::solve_skee_statistical(ch.h(), pm, saa_count, saa_seed);
        return metric(s.p_star, s.w_star, pm);
      });
      guarded(out, base + 2, ctx, [&] { return metric(pm.pmax, matched, pm); });
      continue;
    }
    guarded(out, base + 0, ctx, [&] {
      const auto s = miso::solve_see_perfect(ch, pm);
      return metric(s.p_star, s.w_star, pm);
    });
    guarded(out, base + 1, ctx, [&] {
      const auto s = miso::solve_see_perfect(ch, rate_model(pm));
      return metric(s.p_star, s.w_star, pm);
    });
    guarded(out, base + 2, ctx, [&] {
      const auto s = miso::solve_see_statistical(ch.h(), pm);
      return metric(s.p_star, s.w_star, pm);
    });
    guarded(out, base + 3, ctx, [&] { return metric(pm.pmax, matched, pm); });
  }
  return out;
}

Values eval_mimo(TrialContext& ctx, const std::vector<double>& grid) {
  const auto& cfg = ctx.cfg;
  const double scale = cfg.bandwidth_hz / 1e6;
  const std::size_t nc = curve_ids(cfg).size();
  const auto sco = sco_options(cfg);
  const auto pg = pg_options(cfg);
  Values out(grid.size() * nc);

  auto metric = [&](const model::MimoChannelPair& ch, const model::TransmitCovariance& q,
                    const PowerModel& pm, Metric m) {
    switch (m) {
      case Metric::see: return model::see(ch, q, pm) * scale;
      case Metric::rate: return model::secrecy_rate(ch, q);
      case Metric::skee: return model::skee(ch, q, pm) * scale;
    }
    return 0.0;
  };

  if (cfg.scenario == Scenario::fig6) {
    for (std::size_t si = 0; si < cfg.sigma_h_sweep.size(); ++si) {
      const auto ch = model::sample_channels(cfg.nA, cfg.nB, cfg.nE, cfg.sigma_h_sweep[si],
                                             cfg.sigma_g, ctx.seed);
      for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const PowerModel pm = power_model(cfg, grid[gi]);
        const std::size_t base = gi * nc + 3 * si;
        guarded(out, base + 0, ctx, [&] {
          return metric(ch, mimo::solve_see_perfect_sco(ch, pm, std::nullopt, sco).Q_star, pm,
                        Metric::see);
        });
        guarded(out, base + 1, ctx, [&] {
          return metric(ch, mimo::solve_see_perfect_eigenmode(ch, pm, pg).Q_star, pm, Metric::see);
        });
        guarded(out, base + 2, ctx, [&] {
          if (!out[base] || !out[base + 1]) throw std::runtime_error("gap operand missing");
          const double va = *out[base];
          const double ve = *out[base + 1];
          return va > 0.0 ? (va - ve) / va : 0.0;
        });
      }
    }
    return out;
  }

  const auto ch = model::sample_channels(cfg.nA, cfg.nB, cfg.nE, cfg.sigma_h, cfg.sigma_g, ctx.seed);
  if (cfg.scenario == Scenario::fig7) {
    const model::GramMetrics gm(ch);
    const int res = static_cast<int>(cfg.tol("oracle_resolution", 32));
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      const PowerModel pm = power_model(cfg, grid[gi]);
      const std::size_t base = gi * nc;
      guarded(out, base + 0, ctx, [&] {
        return metric(ch, mimo::solve_see_perfect_sco(ch, rate_model(pm), std::nullopt, sco).Q_star,
                      pm, Metric::rate);
      });
      guarded(out, base + 1, ctx, [&] {
        const auto o = oracles::grid_argmax_cov2(
            [&](const Eigen::Matrix2cd& q) { return gm.secrecy_rate_nats(q); }, pm.pmax, res, 1);
        return std::max(0.0, o.value) / model::kLn2;
      });
      guarded(out, base + 2, ctx, [&] {
        return metric(ch, mimo::solve_see_perfect_sco(ch, pm, std::nullopt, sco).Q_star, pm,
                      Metric::rate);
      });
    }
    return out;
  }

  const int saa_count = static_cast<int>(cfg.tol("saa_count", mimo::kDefaultSaaCount));
  const auto saa = mimo::SaaSampleSet::draw(cfg.nE, cfg.nA, saa_count, mix_seed(ctx.seed, 2));
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const PowerModel pm = power_model(cfg, grid[gi]);
    const std::size_t base = gi * nc;
    if (cfg.metric == Metric::skee) {
      guarded(out, base + 0, ctx, [&] {
        return metric(ch, mimo::solve_skee_perfect(ch, pm, pg).Q_star, pm, Metric::skee);
      });
      guarded(out, base + 1, ctx, [&] {
        return metric(ch, mimo::solve_skee_statistical(ch.H(), pm, saa, pg).Q_star, pm,
                      Metric::skee);
      });
      continue;
    }
    guarded(out, base + 0, ctx, [&] {
      return metric(ch, mimo::solve_see_perfect_sco(ch, pm, std::nullopt, sco).Q_star, pm,
                    cfg.metric);
    });
    guarded(out, base + 1, ctx, [&] {
      return metric(ch, mimo::solve_see_perfect_eigenmode(ch, pm, pg).Q_star, pm, cfg.metric);
    });
    guarded(out, base + 2, ctx, [&] {
      return metric(ch, mimo::solve_see_perfect_sco(ch, rate_model(pm), std::nullopt, sco).Q_star,
                    pm, cfg.metric);
    });
    guarded(out, base + 3, ctx, [&] {
      return metric(ch, mimo::solve_see_statistical(ch.H(), pm, saa).Q_star, pm, cfg.metric);
    });
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  const auto ids = curve_ids(cfg);
  const auto& grid = cfg.pmax_grid_dbw;
  const std::size_t nt = static_cast<std::size_t>(cfg.trials);
  std::vector<Values> per_trial(nt);
  std::vector<std::vector<std::string>> errors(nt);
  parallel_for(nt, threads, [&](std::size_t t) {
    TrialContext ctx{cfg, trial_seed(cfg, static_cast<int>(t)), &errors[t]};
    per_trial[t] = is_miso(cfg) && cfg.scenario != Scenario::fig6 ? eval_miso(ctx, grid)
                                                                   : eval_mimo(ctx, grid);
  });

  ExperimentResult res;
  for (std::size_t t = 0; t < nt; ++t) {
    for (const auto& e : errors[t]) {
      if (res.failures.size() < 10) {
        res.failures.push_back("trial " + std::to_string(t) + ": " + e);
      }
    }
  }
  std::vector<double> vals;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    for (std::size_t ci = 0; ci < ids.size(); ++ci) {
      vals.clear();
      for (std::size_t t = 0; t < nt; ++t) {
        const auto& v = per_trial[t][gi * ids.size() + ci];
        if (v) vals.push_back(*v);
        else ++res.skipped;
      }
      CurvePoint p;
      p.pmax_dbw = grid[gi];
      p.curve_id = ids[ci];
      p.trials = static_cast<int>(vals.size());
      if (!vals.empty()) {
        const auto s = summarize(vals);
        p.mean = s.mean;
        p.std_error = s.std_error;
      }
      res.points.push_back(p);
    }
  }
  return res;
}

std::string format_csv(const std::vector<CurvePoint>& points) {
  std::string out = "pmax_dbw,curve_id,mean,std_error,trials\n";
  char buf[128];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.10g,", p.pmax_dbw);
    out += buf;
    out += p.curve_id;
    std::snprintf(buf, sizeof buf, ",%.10g,%.10g,%d\n", p.mean, p.std_error, p.trials);
    out += buf;
  }
  return out;
}

void emit_csv(const std::vector<CurvePoint>& points, const std::string& path) {
  if (points.empty()) throw std::invalid_argument("emit_csv: no points");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  const std::string text = format_csv(points);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace seeopt::harness
