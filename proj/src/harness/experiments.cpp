#include "kpzlab/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kpzlab/common/errors.hpp"
#include "kpzlab/harness/stats.hpp"
#include "kpzlab/shesolver/she.hpp"

namespace kpzlab::harness {

namespace {

using nlohmann::ordered_json;

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

ordered_json mcmc_json(const stationary::McmcConfig& m) {
  return {{"rho", m.rho}, {"burn_in", m.burn_in}, {"thinning", m.thinning}, {"allow_outside_regime", m.allow_outside_regime}};
}

int grid_index(double x, int cells) {
  const double s = x * cells;
  const long j = std::lround(s);
  if (j < 0 || j > cells || std::abs(s - j) > 1e-9 * cells)
    throw ConfigError("x = " + num(x) + " is not a grid point of the " + std::to_string(cells) + "-cell grid");
  return static_cast<int>(j);
}

// Z = exp(h - h(0)) with the offset kept in the log scale, so shifting h by a
// constant changes nothing but the log scale.
she::GridField to_z(const std::vector<double>& h, int cells) {
  she::GridField z = she::GridField::nodes(cells);
  if (static_cast<int>(h.size()) != cells + 1) throw ConfigError("initial profile has the wrong number of nodes");
  for (int j = 0; j <= cells; ++j) z.values[j] = std::exp(h[j] - h[0]);
  z.log_scale = h[0];
  return z;
}

double anchored(const she::GridField& z, int j) { return std::log(z.values[j] / z.values[0]); }

double zscore(double a, double sa, double b, double sb) {
  const double s = std::sqrt(sa * sa + sb * sb);
  return s > 0.0 ? std::abs(a - b) / s : (a == b ? 0.0 : INFINITY);
}

}  // namespace

SampleEnsemble draw_stationary(double u, double v, int n, int cells, std::uint64_t seed, stationary::McmcConfig mcmc) {
  if (n < 1) throw ConfigError("paths must be at least 1");
  if (u + v == 0.0) return stationary::sample_bm_drift(u, cells, n, seed);
  mcmc.cells = cells;
  mcmc.seed = seed;
  mcmc.length = mcmc.burn_in + static_cast<long>(n) * mcmc.thinning;
  stationary::McmcResult r = stationary::sample_stationary_mcmc(u, v, mcmc);
  return std::move(r.samples);
}

TestReport stationarity_experiment(const StationarityConfig& cfg) {
  const int n = cfg.paths;
  if (n < 50) throw ConfigError("paths must be at least 50 for the KS test");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  std::vector<int> idx;
  for (double x : cfg.xs) idx.push_back(grid_index(x, cfg.cells));

  // First half: initial states; second half: independent time-0 ensemble.
  const SampleEnsemble draws = draw_stationary(cfg.u, cfg.v, 2 * n, cfg.cells, cfg.seed, cfg.mcmc);
  auto initial = [&](std::uint64_t i) {
    if (cfg.initial == InitialLaw::flat) return to_z(std::vector<double>(cfg.cells + 1, 0.0), cfg.cells);
    return to_z(draws.rows[i].values, cfg.cells);
  };
  she::SimConfig sim;
  sim.cells = cfg.cells;
  sim.horizon = cfg.horizon;
  sim.paths = n;
  sim.seed = cfg.seed;
  sim.workers = cfg.workers;
  const BoundaryParams p{cfg.u, cfg.v, 0.0};
  const she::Ensemble e = she::simulate_she(initial, p, sim);

  TestReport rep;
  rep.id = cfg.initial == InitialLaw::flat ? "stationarity-control" : "stationarity";
  rep.parameters = {{"u", cfg.u},
                    {"v", cfg.v},
                    {"paths", n},
                    {"horizon", cfg.horizon},
                    {"cells", cfg.cells},
                    {"dt", e.time.dt},
                    {"xs", cfg.xs},
                    {"alpha", cfg.alpha},
                    {"correction", "bonferroni"},
                    {"initial_law", cfg.initial == InitialLaw::flat ? "flat" : "stationary"},
                    {"sampler", cfg.u + cfg.v == 0.0 ? "bm-drift" : "pcn"}};
  if (cfg.u + cfg.v != 0.0) rep.parameters["mcmc"] = mcmc_json(cfg.mcmc);
  rep.seeds = {{"seed", cfg.seed}, {"initial_rows", "0.." + std::to_string(n - 1)},
               {"reference_rows", std::to_string(n) + ".." + std::to_string(2 * n - 1)}, {"noise_paths", "0.." + std::to_string(n - 1)}};
  rep.statistics["excluded_paths"] = e.excluded();
  rep.table.push_back({"x", "ks_statistic", "p_value", "p_adjusted"});

  const double m = static_cast<double>(cfg.xs.size());
  double min_adj = 1.0;
  auto arr = ordered_json::array();
  for (std::size_t k = 0; k < cfg.xs.size(); ++k) {
    std::vector<double> before, after;
    for (int i = 0; i < n; ++i) before.push_back(draws.rows[n + i].values[idx[k]] - draws.rows[n + i].values[0]);
    for (const auto& r : e.paths)
      if (!r.positivity_lost) after.push_back(anchored(r.snapshots.back(), idx[k]));
    const KsResult ks = ks_two_sample(before, after);
    const double adj = std::min(1.0, m * ks.p_value);
    min_adj = std::min(min_adj, adj);
    arr.push_back({{"x", cfg.xs[k]}, {"ks_statistic", ks.statistic}, {"p_value", ks.p_value}, {"p_adjusted", adj}});
    rep.table.push_back({num(cfg.xs[k]), num(ks.statistic), num(ks.p_value), num(adj)});
  }
  rep.statistics["marginals"] = std::move(arr);
  rep.statistics["min_p_adjusted"] = min_adj;
  if (cfg.initial == InitialLaw::flat)
    rep.checks.push_back(make_check("control detected: min adjusted p", min_adj, "<", cfg.alpha));
  else
    rep.checks.push_back(make_check("stationary: min adjusted p", min_adj, ">", cfg.alpha));
  rep.checks.push_back(make_check("excluded paths", e.excluded(), "<=", 0.01 * n));
  return rep;
}

Functional parse_functional(const std::string& name) {
  if (name == "endpoint") return Functional::endpoint;
  if (name == "max") return Functional::maximum;
  if (name == "integral") return Functional::integral;
  if (name == "constant") return Functional::constant;
  throw ConfigError("functional must be endpoint, max, integral or constant, got '" + name + "'");
}

std::string to_string(Functional f) {
  switch (f) {
    case Functional::endpoint:
      return "endpoint";
    case Functional::maximum:
      return "max";
    case Functional::integral:
      return "integral";
    case Functional::constant:
      return "constant";
  }
  return "";
}

double apply_functional(Functional f, const std::vector<double>& z, double dx) {
  const std::size_t n = z.size() - 1;
  switch (f) {
    case Functional::endpoint:
      return std::log(z[n] / z[0]);
    case Functional::maximum: {
      double m = 0.0;
      for (double v : z) m = std::max(m, std::log(v / z[0]));
      return m;
    }
    case Functional::integral: {
      double s = 0.5 * std::log(z[n] / z[0]);
      for (std::size_t j = 1; j < n; ++j) s += std::log(z[j] / z[0]);
      return s * dx;
    }
    case Functional::constant:
      return 1.0;
  }
  return 0.0;
}

TestReport ergodic_average(const ErgodicConfig& cfg) {
  if (!(cfg.sample_every > 0.0)) throw ConfigError("sample_every must be positive");
  const double dx = 1.0 / cfg.cells;

  // Reference mean from the direct sampler.
  double ref = 0.0, ref_se = 0.0;
  std::string ref_source;
  if (cfg.functional == Functional::constant) {
    ref = 1.0;
    ref_source = "exact";
  } else if (cfg.functional == Functional::endpoint && cfg.u + cfg.v == 0.0) {
    ref = cfg.u;
    ref_source = "exact";
  } else {
    const SampleEnsemble s = draw_stationary(cfg.u, cfg.v, cfg.reference_samples, cfg.cells, cfg.seed + 1, cfg.mcmc);
    std::vector<double> f;
    for (const auto& r : s.rows) {
      std::vector<double> z(r.values.size());
      for (std::size_t j = 0; j < z.size(); ++j) z[j] = std::exp(r.values[j] - r.values[0]);
      f.push_back(apply_functional(cfg.functional, z, dx));
    }
    const double tau = cfg.u + cfg.v == 0.0 ? 1.0 : stationary::integrated_autocorrelation(f);
    const stationary::MarginalMoments m = stationary::sample_moments(f, 0.0, tau);
    ref = m.mean.value;
    ref_se = m.mean.se;
    ref_source = "sampler";
  }

  const SampleEnsemble start = draw_stationary(cfg.u, cfg.v, 1, cfg.cells, cfg.seed, cfg.mcmc);
  she::SimConfig sim;
  sim.cells = cfg.cells;
  sim.horizon = cfg.horizon;
  sim.seed = cfg.seed;
  const she::TimeGrid tg = she::plan_time_grid(sim);
  const long every = std::max(1L, std::lround(cfg.sample_every / tg.dt));
  std::vector<double> series;
  const she::PathResult path = she::simulate_path(to_z(start.rows[0].values, cfg.cells), BoundaryParams{cfg.u, cfg.v, 0.0}, sim, 0,
                                                  [&](long step, double, const std::vector<double>& z) {
                                                    if (step % every == 0) series.push_back(apply_functional(cfg.functional, z, dx));
                                                  });
  if (path.positivity_lost) throw she::PositivityLost("ergodic path lost positivity");
  const BatchMeans bm = batch_means(series, cfg.batches);

  TestReport rep;
  rep.id = "ergodic";
  rep.parameters = {{"u", cfg.u},         {"v", cfg.v},         {"functional", to_string(cfg.functional)},
                    {"horizon", cfg.horizon}, {"sample_every", every * tg.dt}, {"cells", cfg.cells},
                    {"dt", tg.dt},        {"batches", cfg.batches}, {"reference_samples", cfg.reference_samples},
                    {"reference_source", ref_source}};
  if (cfg.u + cfg.v != 0.0) rep.parameters["mcmc"] = mcmc_json(cfg.mcmc);
  rep.seeds = {{"path", cfg.seed}, {"reference", cfg.seed + 1}};
  const double diff = bm.mean - ref;
  const double se = std::sqrt(bm.se * bm.se + ref_se * ref_se);
  const double z = se > 0.0 ? std::abs(diff) / se : (diff == 0.0 ? 0.0 : INFINITY);
  rep.statistics = {{"time_average", bm.mean}, {"batch_means_se", bm.se}, {"samples", series.size()},
                    {"ensemble_mean", ref},    {"ensemble_se", ref_se},  {"difference", diff},
                    {"z_score", z}};
  rep.checks.push_back(make_check("|time average - ensemble mean| / SE", z, "<=", 3.0));
  rep.table.push_back({"batch", "mean"});
  const std::size_t len = series.size() / cfg.batches;
  for (int b = 0; b < cfg.batches; ++b) {
    double s = 0.0;
    for (std::size_t k = 0; k < len; ++k) s += series[b * len + k];
    rep.table.push_back({std::to_string(b), num(s / len)});
  }
  return rep;
}

TestReport coupling_experiment(const she::GridField& h0, const she::GridField& h1, const CouplingConfig& cfg) {
  if (h0.cells() != cfg.cells || h1.cells() != cfg.cells) throw ConfigError("initial states must be on the configured grid");
  if (cfg.curve_points < 1 || cfg.realizations < 1) throw ConfigError("curve_points and realizations must be positive");
  she::SimConfig sim;
  sim.cells = cfg.cells;
  sim.horizon = cfg.horizon;
  sim.seed = cfg.seed;
  sim.paths = cfg.realizations;
  sim.workers = cfg.workers;
  for (int k = 0; k <= cfg.curve_points; ++k) sim.record_times.push_back(cfg.horizon * k / cfg.curve_points);
  const BoundaryParams p{cfg.u, cfg.v, 0.0};
  const she::Ensemble a = she::simulate_she(to_z(h0.values, cfg.cells), p, sim);
  const she::Ensemble b = she::simulate_she(to_z(h1.values, cfg.cells), p, sim);

  TestReport rep;
  rep.id = "coupling";
  rep.exploratory = true;
  rep.parameters = {{"u", cfg.u}, {"v", cfg.v}, {"cells", cfg.cells}, {"horizon", cfg.horizon}, {"dt", a.time.dt},
                    {"realizations", cfg.realizations}, {"times", a.time.record_times}};
  rep.seeds = {{"seed", cfg.seed}, {"noise_paths", "0.." + std::to_string(cfg.realizations - 1)}};
  std::vector<std::string> head = {"realization"};
  for (double t : a.time.record_times) head.push_back("D(" + num(t) + ")");
  rep.table.push_back(head);

  const std::size_t nt = a.time.record_times.size();
  std::vector<double> mean_curve(nt, 0.0);
  int decayed = 0, used = 0;
  for (int i = 0; i < cfg.realizations; ++i) {
    const auto& ra = a.paths[i];
    const auto& rb = b.paths[i];
    if (ra.positivity_lost || rb.positivity_lost) continue;
    ++used;
    std::vector<std::string> row = {std::to_string(i)};
    std::vector<double> d(nt);
    for (std::size_t k = 0; k < nt; ++k) {
      double m = 0.0;
      for (int j = 0; j <= cfg.cells; ++j) m = std::max(m, std::abs(anchored(ra.snapshots[k], j) - anchored(rb.snapshots[k], j)));
      d[k] = m;
      mean_curve[k] += m;
      row.push_back(num(m));
    }
    if (d.back() < d.front()) ++decayed;
    rep.table.push_back(std::move(row));
  }
  for (double& m : mean_curve) m /= std::max(used, 1);
  rep.statistics = {{"mean_curve", mean_curve},
                    {"realizations_used", used},
                    {"fraction_decayed", used ? double(decayed) / used : 0.0}};
  return rep;
}

TestReport cross_sampler_experiment(const CrossSamplerConfig& cfg) {
  std::vector<int> idx;
  for (double x : cfg.xs) idx.push_back(grid_index(x, cfg.cells));

  stationary::McmcConfig mc = cfg.mcmc;
  mc.cells = cfg.cells;
  mc.seed = cfg.seed;
  const stationary::McmcResult chain = stationary::sample_stationary_mcmc(cfg.u, cfg.v, mc);
  const stationary::ImportanceResult is =
      stationary::importance_moments(cfg.u, cfg.v, cfg.xs, cfg.importance_samples, cfg.seed + 1, cfg.cells);

  she::SimConfig sim;
  sim.cells = cfg.cells;
  sim.horizon = cfg.spde_horizon;
  sim.paths = cfg.spde_paths;
  sim.seed = cfg.seed + 2;
  sim.workers = cfg.workers;
  const she::Ensemble e = she::simulate_she(she::GridField::nodes(cfg.cells, 1.0), BoundaryParams{cfg.u, cfg.v, 0.0}, sim);

  TestReport rep;
  rep.id = "cross-sampler";
  rep.parameters = {{"u", cfg.u},
                    {"v", cfg.v},
                    {"xs", cfg.xs},
                    {"cells", cfg.cells},
                    {"mcmc", mcmc_json(mc)},
                    {"mcmc_length", mc.length},
                    {"importance_samples", cfg.importance_samples},
                    {"spde_paths", cfg.spde_paths},
                    {"spde_horizon", cfg.spde_horizon},
                    {"spde_initial", "flat"},
                    {"dt", e.time.dt}};
  rep.seeds = {{"mcmc", cfg.seed}, {"importance", cfg.seed + 1}, {"spde", cfg.seed + 2}};
  rep.statistics = {{"acceptance_rate", chain.acceptance_rate},
                    {"autocorrelation_time", chain.autocorrelation_time},
                    {"importance_ess", is.effective_sample_size},
                    {"spde_excluded", e.excluded()}};
  rep.table.push_back({"x", "source", "mean", "mean_se", "variance", "variance_se"});
  auto arr = ordered_json::array();
  for (std::size_t k = 0; k < cfg.xs.size(); ++k) {
    const double x = cfg.xs[k];
    const auto m = stationary::sample_moments(chain.samples.column(idx[k]), x, chain.autocorrelation_time);
    const auto& o = is.marginals[k];
    std::vector<double> sp;
    for (const auto& r : e.paths)
      if (!r.positivity_lost) sp.push_back(anchored(r.snapshots.back(), idx[k]));
    const auto s = stationary::sample_moments(sp, x, 1.0);
    const std::pair<const char*, const stationary::MarginalMoments*> src[] = {{"mcmc", &m}, {"importance", &o}, {"spde", &s}};
    for (const auto& [name, mm] : src) {
      arr.push_back({{"x", x}, {"source", name}, {"mean", mm->mean.value}, {"mean_se", mm->mean.se},
                     {"variance", mm->variance.value}, {"variance_se", mm->variance.se}});
      rep.table.push_back({num(x), name, num(mm->mean.value), num(mm->mean.se), num(mm->variance.value), num(mm->variance.se)});
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const auto& a = *src[i].second;
        const auto& b = *src[j].second;
        const std::string tag = std::string(src[i].first) + " vs " + src[j].first + " at x = " + num(x);
        rep.checks.push_back(make_check("mean z, " + tag, zscore(a.mean.value, a.mean.se, b.mean.value, b.mean.se), "<=", 3.0));
        rep.checks.push_back(
            make_check("variance z, " + tag, zscore(a.variance.value, a.variance.se, b.variance.value, b.variance.se), "<=", 3.0));
      }
    }
  }
  rep.statistics["marginals"] = std::move(arr);
  return rep;
}

}  // namespace kpzlab::harness
