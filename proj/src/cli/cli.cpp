#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "kpzlab/cli/cli.hpp"
#include "kpzlab/common/errors.hpp"
#include "kpzlab/harness/experiments.hpp"
#include "kpzlab/kernels/constant_a.hpp"
#include "kpzlab/kernels/robin.hpp"
#include "kpzlab/shesolver/she.hpp"
#include "kpzlab/stationary/stationary.hpp"
#include "kpzlab/treealg/verification.hpp"

namespace kpzlab::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Context {
  RunConfig cfg;
  fs::path out_dir;
  std::ostream& out;
  std::string experiment;
  std::uint64_t seed = 7;
  int workers = 1;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

void write_json(Context& ctx, const std::string& name, const ordered_json& j) {
  write_file(ctx.out_dir / name, j.dump(2) + "\n");
  ctx.out << "wrote " << (ctx.out_dir / name).string() << "\n";
}

/// "# key = value" lines carrying the resolved configuration.
std::string config_comment(const Context& ctx) {
  std::string s = "# kpzlab " + ctx.cfg.subcommand + "\n";
  for (const auto& [k, v] : ctx.cfg.flat()) s += "# " + k + " = " + v + "\n";
  return s;
}

void write_csv(Context& ctx, const std::string& name, const std::string& body) {
  write_file(ctx.out_dir / name, config_comment(ctx) + body);
  ctx.out << "wrote " << (ctx.out_dir / name).string() << "\n";
}

void write_ensemble(Context& ctx, const std::string& name, SampleEnsemble e) {
  for (const auto& [k, v] : ctx.cfg.flat()) e.set(k, v);
  std::ostringstream os;
  e.write(os);
  write_file(ctx.out_dir / name, os.str());
  ctx.out << "wrote " << (ctx.out_dir / name).string() << "\n";
}

ordered_json header(const Context& ctx) {
  ordered_json j;
  j["command"] = ctx.cfg.subcommand;
  j["config"] = ctx.cfg.resolved();
  return j;
}

void read_run(Context& ctx) {
  ctx.seed = ctx.cfg.unsigned_integer("run.seed", 7);
  const long w = ctx.cfg.integer("run.workers", 1);
  if (w < 1 || w > 256) throw ConfigError("run.workers must lie in [1, 256], got " + std::to_string(w));
  ctx.workers = static_cast<int>(w);
}

int read_cells(RunConfig& cfg, int fallback = 64) {
  const long n = cfg.integer("grid.cells", fallback);
  if (n < 2 || n > 1 << 16) throw ConfigError("grid.cells must lie in [2, 65536], got " + std::to_string(n));
  return static_cast<int>(n);
}

int read_count(RunConfig& cfg, const std::string& key, long fallback, long min = 1) {
  const long n = cfg.integer(key, fallback);
  if (n < min || n > 100000000) throw ConfigError(key + " must lie in [" + std::to_string(min) + ", 1e8], got " + std::to_string(n));
  return static_cast<int>(n);
}

double read_positive(RunConfig& cfg, const std::string& key, double fallback) {
  const double v = cfg.real(key, fallback);
  if (!(v > 0.0)) throw ConfigError(key + " must be positive, got " + num(v));
  return v;
}

std::vector<double> read_points(RunConfig& cfg, const std::string& key, const std::vector<double>& fallback) {
  std::vector<double> xs = cfg.reals(key, fallback);
  for (double x : xs)
    if (x < 0.0 || x > 1.0) throw ConfigError(key + " entries must lie in [0, 1], got " + num(x));
  return xs;
}

/// Chain options; the sample count is set by the caller.
stationary::McmcConfig read_mcmc(RunConfig& cfg) {
  stationary::McmcConfig m;
  m.rho = cfg.real("mcmc.rho", m.rho);
  m.burn_in = cfg.integer("mcmc.burn_in", m.burn_in);
  m.thinning = cfg.integer("mcmc.thinning", m.thinning);
  m.allow_outside_regime = cfg.flag("mcmc.allow_outside_regime", m.allow_outside_regime);
  m.validate();
  return m;
}

// ---- verify-algebra ------------------------------------------------------

ordered_json table_json(const treealg::TableResult& t) {
  return {{"table", t.table}, {"rows_checked", t.rows_checked}, {"exact", t.exact()}, {"mismatches", t.mismatches}};
}

int verify_algebra(Context& ctx) {
  const std::string tables = ctx.cfg.text("algebra.tables", "");
  ctx.cfg.finish();
  treealg::AlgebraReport rep;
  if (tables.empty()) {
    rep = treealg::verify_algebra();
  } else {
    std::optional<treealg::Basis> basis;
    try {
      basis = treealg::Basis::load(tables);
    } catch (const std::exception& e) {
      throw ConfigError("algebra.tables: " + std::string(e.what()));
    }
    rep = treealg::verify_algebra(*basis);
  }

  ordered_json j = header(ctx);
  j["tables"] = ordered_json::array();
  for (const auto& t : rep.tables) {
    j["tables"].push_back(table_json(t));
    ctx.out << t.table << ": " << (t.exact() ? "exact" : "MISMATCH") << " (" << t.rows_checked << " rows)\n";
    for (const auto& m : t.mismatches) ctx.out << "  " << m << "\n";
  }
  j["derived"] = ordered_json::array();
  for (const auto& t : rep.derived) {
    j["derived"].push_back(table_json(t));
    ctx.out << t.table << ": " << (t.exact() ? "exact" : "MISMATCH") << "\n";
    for (const auto& m : t.mismatches) ctx.out << "  " << m << "\n";
  }
  j["notes"] = rep.notes;
  j["summary"] = rep.summary();
  j["all_exact"] = rep.all_exact();
  write_json(ctx, "algebra_report.json", j);
  ctx.out << rep.summary() << "\n";
  return rep.all_exact() ? ok : check_failed;
}

// ---- kernel --------------------------------------------------------------

int kernel(Context& ctx) {
  RunConfig& cfg = ctx.cfg;
  const std::string kind = cfg.text("kernel.kind", "neumann", {"neumann", "robin", "gauss"});
  const std::vector<double> times = cfg.reals("kernel.times", {0.05, 0.1, 0.5, 1.0});
  const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  const std::vector<double> xs = read_points(cfg, "kernel.xs", grid);
  const std::vector<double> ys = read_points(cfg, "kernel.ys", grid);
  for (double t : times)
    if (!(t > 0.0)) throw ConfigError("kernel.times entries must be positive, got " + num(t));

  int images = 20;
  BoundaryParams p;
  kernels::GridSpec spec;
  if (kind == "neumann") {
    images = read_count(cfg, "kernel.images", 20, 0);
  } else if (kind == "robin") {
    p.u = cfg.real("boundary.u", p.u);
    p.v = cfg.real("boundary.v", p.v);
    spec.cells = read_cells(cfg);
    spec.dt = cfg.real("grid.dt", 0.0);
    // Constructing the semigroup checks the step against the stability bound.
    kernels::RobinSemigroup check(p, spec);
    for (double x : xs) {
      const double s = x * spec.cells;
      if (std::abs(s - std::round(s)) > 1e-9) throw ConfigError("kernel.xs: " + num(x) + " is not a grid point");
    }
    for (double y : ys) {
      const double s = y * spec.cells;
      if (std::abs(s - std::round(s)) > 1e-9) throw ConfigError("kernel.ys: " + num(y) + " is not a grid point");
    }
  }
  cfg.finish();

  std::string csv = "t,x,y,value,error_bound\n";
  for (double t : times) {
    for (double y : ys) {
      std::vector<double> col, fine;
      if (kind == "robin") {
        col = kernels::robin_kernel_column(t, y, p, spec);
        kernels::GridSpec twice{2 * spec.cells, spec.dt > 0.0 ? spec.dt / 4.0 : 0.0};
        fine = kernels::robin_kernel_column(t, y, p, twice);
      }
      for (double x : xs) {
        double value = 0.0, bound = 0.0;
        if (kind == "neumann") {
          const kernels::KernelValue k = kernels::neumann_kernel(t, x, y, images);
          value = k.value;
          bound = k.error_bound;
        } else if (kind == "gauss") {
          value = kernels::gauss_kernel(t, x - y);
        } else {
          const auto j = static_cast<std::size_t>(std::lround(x * spec.cells));
          value = col[j];
          bound = std::abs(value - fine[2 * j]);
        }
        csv += num(t) + "," + num(x) + "," + num(y) + "," + num(value) + "," + num(bound) + "\n";
      }
    }
  }
  write_csv(ctx, "kernel.csv", csv);
  return ok;
}

// ---- constant-a ----------------------------------------------------------

int constant_a(Context& ctx) {
  RunConfig& cfg = ctx.cfg;
  const double rt = read_positive(cfg, "mollifier.time_radius", 1.0);
  const double rx = read_positive(cfg, "mollifier.space_radius", 1.0);
  kernels::QuadratureParams q;
  q.angular = read_count(cfg, "quadrature.angular", q.angular, 4);
  q.radial = read_count(cfg, "quadrature.radial", q.radial, 4);
  q.use_symmetry = cfg.flag("quadrature.symmetry", q.use_symmetry);
  cfg.finish();
  const kernels::Mollifier rho = kernels::Mollifier::bump(rt, rx);
  rho.validate();
  const kernels::ConstantA a = kernels::constant_a(rho, q);

  ordered_json j = header(ctx);
  j["value"] = a.value;
  j["error_estimate"] = a.error_estimate;
  j["coarse"] = a.coarse;
  j["fine"] = a.fine;
  j["mollifier"] = {{"name", rho.name},
                    {"profile", "(35/32)(1 - z^2)^3 on [-1, 1], both variables"},
                    {"time_radius", rho.time_radius},
                    {"space_radius", rho.space_radius}};
  j["diffusion_coefficient"] = kernels::KernelConvention{}.diffusion_coefficient;
  write_json(ctx, "constant_a.json", j);
  ctx.out << "a = " << num(a.value) << " +- " << num(a.error_estimate) << "\n";
  return ok;
}

// ---- simulate ------------------------------------------------------------

/// Z = exp(h - h(0)) carrying h(0) as the log scale.
she::GridField height_to_z(const std::vector<double>& h, int cells) {
  she::GridField z = she::GridField::nodes(cells);
  for (int j = 0; j <= cells; ++j) z.values[j] = std::exp(h[j] - h[0]);
  z.log_scale = h[0];
  return z;
}

int simulate(Context& ctx) {
  RunConfig& cfg = ctx.cfg;
  BoundaryParams p;
  p.u = cfg.real("boundary.u", p.u);
  p.v = cfg.real("boundary.v", p.v);
  she::SimConfig sim;
  sim.cells = read_cells(cfg);
  sim.dt = cfg.real("grid.dt", 0.0);
  sim.horizon = read_positive(cfg, "sim.horizon", 1.0);
  sim.paths = read_count(cfg, "sim.paths", 100);
  sim.record_times = cfg.reals("sim.record_times", {sim.horizon});
  sim.noise = cfg.flag("sim.noise", true);
  sim.positivity = cfg.text("sim.positivity", "exclude", {"exclude", "fail"}) == "fail" ? she::PositivityPolicy::fail
                                                                                      : she::PositivityPolicy::exclude;
  const std::string initial = cfg.text("sim.initial", "flat", {"flat", "stationary"});
  const std::string obs_name = cfg.text("sim.observable", "z", {"z", "h", "anchored_h"});
  stationary::McmcConfig mcmc;
  const bool chain = initial == "stationary" && p.u + p.v != 0.0;
  if (chain) mcmc = read_mcmc(cfg);
  cfg.finish();
  sim.seed = ctx.seed;
  sim.workers = ctx.workers;
  sim.validate();
  if (chain) stationary::check_regime(p.u, p.v, mcmc.allow_outside_regime);

  she::Ensemble e;
  if (initial == "flat") {
    e = she::simulate_she(she::GridField::nodes(sim.cells, 1.0), p, sim);
  } else {
    const SampleEnsemble draws = harness::draw_stationary(p.u, p.v, sim.paths, sim.cells, ctx.seed, mcmc);
    e = she::simulate_she([&](std::uint64_t i) { return height_to_z(draws.rows[i].values, sim.cells); }, p, sim);
  }

  const she::Observable obs = obs_name == "z" ? she::Observable::z
                              : obs_name == "h" ? she::Observable::h
                                                : she::Observable::anchored_h;
  std::string csv = "t,x,mean,variance,n_effective\n";
  for (const she::SummaryRow& r : she::summarize(e, obs))
    csv += num(r.t) + "," + num(r.x) + "," + num(r.mean) + "," + num(r.variance) + "," + std::to_string(r.n_effective) + "\n";
  write_csv(ctx, "simulate_summary.csv", csv);

  SampleEnsemble snap;
  snap.cells = sim.cells;
  snap.set("values", "h");
  snap.set("dt", num(e.time.dt));
  for (const she::PathResult& path : e.paths) {
    if (path.positivity_lost) continue;
    for (const she::GridField& z : path.snapshots) snap.rows.push_back({path.index, z.time, she::hopf_cole(z).values});
  }
  write_ensemble(ctx, "simulate_ensemble.txt", std::move(snap));

  ordered_json j = header(ctx);
  j["dt"] = e.time.dt;
  j["steps"] = e.time.steps;
  j["record_times"] = e.time.record_times;
  j["excluded"] = e.excluded();
  j["exclusion_rate"] = e.exclusion_rate();
  j["excluded_paths"] = ordered_json::array();
  for (const she::PathResult& path : e.paths)
    if (path.positivity_lost) j["excluded_paths"].push_back({{"path", path.index}, {"lost_at", path.lost_at}});
  write_json(ctx, "simulate.json", j);
  ctx.out << "paths " << sim.paths << ", excluded " << e.excluded() << ", dt " << num(e.time.dt) << "\n";
  return ok;
}

// ---- sample-stationary ---------------------------------------------------

int sample_stationary(Context& ctx) {
  RunConfig& cfg = ctx.cfg;
  const double u = cfg.real("boundary.u", 0.5);
  const double v = cfg.real("boundary.v", -0.5);
  const int cells = read_cells(cfg);
  const int n = read_count(cfg, "stationary.samples", 1000);
  const bool chain = u + v != 0.0;
  stationary::McmcConfig mcmc;
  if (chain) mcmc = read_mcmc(cfg);
  const int nz = read_count(cfg, "normalization.samples", 10000, 2);
  cfg.finish();
  if (chain) stationary::check_regime(u, v, mcmc.allow_outside_regime);

  ordered_json j = header(ctx);
  SampleEnsemble samples;
  if (chain) {
    mcmc.cells = cells;
    mcmc.seed = ctx.seed;
    mcmc.length = mcmc.burn_in + static_cast<long>(n) * mcmc.thinning;
    stationary::McmcResult r = stationary::sample_stationary_mcmc(u, v, mcmc);
    j["sampler"] = "pcn";
    j["acceptance_rate"] = r.acceptance_rate;
    j["autocorrelation_time"] = r.autocorrelation_time;
    j["warnings"] = r.warnings;
    for (const auto& w : r.warnings) ctx.out << "warning: " << w << "\n";
    ctx.out << "acceptance " << num(r.acceptance_rate) << ", autocorrelation time " << num(r.autocorrelation_time) << "\n";
    samples = std::move(r.samples);
  } else {
    // u + v = 0: the law is Brownian motion with drift u, sampled exactly.
    samples = stationary::sample_bm_drift(u, cells, n, ctx.seed);
    j["sampler"] = "bm-drift";
    j["acceptance_rate"] = nullptr;
    j["autocorrelation_time"] = nullptr;
    j["warnings"] = ordered_json::array();
  }
  const stationary::Estimate z =
      stationary::estimate_normalization(u, v, nz, ctx.seed, cells, false, !chain || mcmc.allow_outside_regime);
  j["normalization"] = {{"value", z.value}, {"se", z.se}};
  j["samples"] = samples.rows.size();
  ctx.out << "normalization " << num(z.value) << " +- " << num(z.se) << "\n";

  samples.set("sampler", j["sampler"].get<std::string>());
  write_ensemble(ctx, "stationary_ensemble.txt", std::move(samples));
  write_json(ctx, "stationary.json", j);
  return ok;
}

// ---- experiment ----------------------------------------------------------

she::GridField initial_height(const std::string& kind, double u, double v, int cells, std::uint64_t seed, int which) {
  if (kind == "flat") return she::GridField::nodes(cells);
  if (kind == "sine") return she::GridField::sample(cells, [](double x) { return std::sin(std::numbers::pi * x); });
  const SampleEnsemble d = harness::draw_stationary(u, v, 2, cells, seed);
  she::GridField h = she::GridField::nodes(cells);
  h.values = d.rows[which].values;
  return h;
}

harness::TestReport run_experiment(Context& ctx) {
  RunConfig& cfg = ctx.cfg;
  const std::string& name = ctx.experiment;
  if (name == "stationarity" || name == "stationarity-control") {
    harness::StationarityConfig c;
    c.u = cfg.real("boundary.u", c.u);
    c.v = cfg.real("boundary.v", c.v);
    c.cells = read_cells(cfg, c.cells);
    c.paths = read_count(cfg, "experiment.paths", c.paths);
    // Flat data has relaxed by t = 1; the control is run where it has not.
    if (name == "stationarity-control") c.horizon = 0.1;
    c.horizon = read_positive(cfg, "experiment.horizon", c.horizon);
    c.xs = read_points(cfg, "experiment.xs", c.xs);
    c.alpha = cfg.real("experiment.alpha", c.alpha);
    if (name == "stationarity-control") c.initial = harness::InitialLaw::flat;
    if (c.u + c.v != 0.0) c.mcmc = read_mcmc(cfg);
    cfg.finish();
    if (c.u + c.v != 0.0) stationary::check_regime(c.u, c.v, c.mcmc.allow_outside_regime);
    c.seed = ctx.seed;
    c.workers = ctx.workers;
    return harness::stationarity_experiment(c);
  }
  if (name == "ergodic") {
    harness::ErgodicConfig c;
    c.u = cfg.real("boundary.u", c.u);
    c.v = cfg.real("boundary.v", c.v);
    c.cells = read_cells(cfg, c.cells);
    c.functional = harness::parse_functional(
        cfg.text("experiment.functional", to_string(c.functional), {"endpoint", "maximum", "integral", "constant"}));
    c.horizon = read_positive(cfg, "experiment.horizon", c.horizon);
    c.sample_every = read_positive(cfg, "experiment.sample_every", c.sample_every);
    c.batches = read_count(cfg, "experiment.batches", c.batches, 2);
    c.reference_samples = read_count(cfg, "experiment.reference_samples", c.reference_samples, 2);
    if (c.u + c.v != 0.0) c.mcmc = read_mcmc(cfg);
    cfg.finish();
    if (c.u + c.v != 0.0) stationary::check_regime(c.u, c.v, c.mcmc.allow_outside_regime);
    c.seed = ctx.seed;
    return harness::ergodic_average(c);
  }
  if (name == "coupling") {
    harness::CouplingConfig c;
    c.u = cfg.real("boundary.u", c.u);
    c.v = cfg.real("boundary.v", c.v);
    c.cells = read_cells(cfg, c.cells);
    c.horizon = read_positive(cfg, "experiment.horizon", c.horizon);
    c.curve_points = read_count(cfg, "experiment.curve_points", c.curve_points);
    c.realizations = read_count(cfg, "experiment.realizations", 100);
    const std::vector<std::string> kinds = {"flat", "sine", "stationary"};
    const std::string k0 = cfg.text("experiment.h0", "flat", kinds);
    const std::string k1 = cfg.text("experiment.h1", "sine", kinds);
    cfg.finish();
    if ((k0 == "stationary" || k1 == "stationary") && c.u + c.v != 0.0) stationary::check_regime(c.u, c.v);
    c.seed = ctx.seed;
    c.workers = ctx.workers;
    const she::GridField h0 = initial_height(k0, c.u, c.v, c.cells, c.seed, 0);
    const she::GridField h1 = initial_height(k1, c.u, c.v, c.cells, c.seed, 1);
    return harness::coupling_experiment(h0, h1, c);
  }
  harness::CrossSamplerConfig c;
  c.u = cfg.real("boundary.u", c.u);
  c.v = cfg.real("boundary.v", c.v);
  c.cells = read_cells(cfg, c.cells);
  c.xs = read_points(cfg, "experiment.xs", c.xs);
  c.importance_samples = read_count(cfg, "experiment.importance_samples", c.importance_samples, 2);
  c.spde_paths = read_count(cfg, "experiment.spde_paths", c.spde_paths, 2);
  c.spde_horizon = read_positive(cfg, "experiment.spde_horizon", c.spde_horizon);
  c.mcmc = read_mcmc(cfg);
  cfg.finish();
  stationary::check_regime(c.u, c.v, c.mcmc.allow_outside_regime);
  c.seed = ctx.seed;
  c.workers = ctx.workers;
  return harness::cross_sampler_experiment(c);
}

int experiment(Context& ctx) {
  const harness::TestReport rep = run_experiment(ctx);
  ordered_json j = header(ctx);
  const ordered_json body = rep.to_json();
  for (const auto& [k, v] : body.items()) j[k] = v;
  write_json(ctx, ctx.experiment + ".json", j);
  write_csv(ctx, ctx.experiment + ".csv", rep.csv_text());
  for (const auto& c : rep.checks)
    ctx.out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << num(c.value) << " " << c.relation << " "
            << num(c.threshold) << "\n";
  if (rep.exploratory) {
    ctx.out << rep.id << ": exploratory, no checks\n";
    return ok;
  }
  ctx.out << rep.id << ": " << (rep.passed() ? "passed" : "FAILED") << "\n";
  return rep.passed() ? ok : check_failed;
}

// ---- command line --------------------------------------------------------

struct Flags {
  std::string config, out_dir = ".", seed, workers, u, v, tables, experiment;
  std::vector<std::string> sets;
};

void add_common(CLI::App* sc, Flags& f, bool boundary) {
  sc->add_option("--config", f.config, "INI file with [section] key = value entries");
  sc->add_option("--set", f.sets, "Override one key, section.key=value (repeatable)");
  sc->add_option("--seed", f.seed, "Master seed (run.seed, default 7)");
  sc->add_option("--workers", f.workers, "Worker threads (run.workers, default 1)");
  sc->add_option("--out-dir", f.out_dir, "Directory for artifacts (default .)");
  if (boundary) {
    sc->add_option("--u", f.u, "Left boundary parameter (boundary.u)");
    sc->add_option("--v", f.v, "Right boundary parameter (boundary.v)");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Open KPZ equation toolkit: tree algebra checks, heat kernels, SHE simulation, stationary sampling."};
  app.name("kpzlab");
  app.require_subcommand(1);
  Flags f;

  auto* va = app.add_subcommand("verify-algebra", "Recompute the tree algebra tables and compare with the golden data");
  add_common(va, f, false);
  va->add_option("--tables", f.tables, "Alternative golden tables file (algebra.tables)");
  va->footer("Writes algebra_report.json. Exit 1 on any mismatch.");

  auto* ke = app.add_subcommand("kernel", "Tabulate a heat kernel");
  add_common(ke, f, true);
  ke->footer(
      "Keys: kernel.kind (neumann|robin|gauss), kernel.times, kernel.xs, kernel.ys, kernel.images,\n"
      "grid.cells, grid.dt, boundary.u, boundary.v.\n"
      "kernel.csv columns: t, x, y, value, error_bound. The bound is rigorous for the image sum\n"
      "(neumann), 0 for gauss, and the change under grid refinement for robin.");

  auto* ca = app.add_subcommand("constant-a", "Boundary renormalisation constant a for the bump mollifier");
  add_common(ca, f, false);
  ca->footer(
      "Keys: mollifier.time_radius, mollifier.space_radius, quadrature.angular, quadrature.radial,\n"
      "quadrature.symmetry. Writes constant_a.json (value, error_estimate, mollifier).");

  auto* si = app.add_subcommand("simulate", "Simulate the stochastic heat equation with Robin boundaries");
  add_common(si, f, true);
  si->footer(
      "Keys: grid.cells, grid.dt, sim.horizon, sim.paths, sim.record_times, sim.noise, sim.positivity\n"
      "(exclude|fail), sim.initial (flat|stationary), sim.observable (z|h|anchored_h), mcmc.*.\n"
      "simulate_summary.csv columns: t, x, mean, variance, n_effective (paths kept).\n"
      "simulate_ensemble.txt: h per kept path and record time. simulate.json: step and exclusions.");

  auto* ss = app.add_subcommand("sample-stationary", "Draw from the stationary measure");
  add_common(ss, f, true);
  ss->footer(
      "Keys: grid.cells, stationary.samples, normalization.samples, mcmc.rho, mcmc.burn_in,\n"
      "mcmc.thinning, mcmc.allow_outside_regime.\n"
      "stationary_ensemble.txt: one anchored profile per row (columns path, time, x0..xN).\n"
      "stationary.json: acceptance_rate, autocorrelation_time, normalization.");

  auto* ex = app.add_subcommand("experiment", "Run a statistical experiment and write its report");
  add_common(ex, f, true);
  ex->add_option("name", f.experiment, "stationarity | stationarity-control | ergodic | coupling | cross-sampler")
      ->required()
      ->check(CLI::IsMember({"stationarity", "stationarity-control", "ergodic", "coupling", "cross-sampler"}));
  ex->footer(
      "Writes <name>.json (config, parameters, seeds, statistics, checks) and <name>.csv with the\n"
      "raw per-item statistics; columns are named in its first non-comment row. Exit 1 if a check fails.");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : config_error;
  }

  CLI::App* sc = app.get_subcommands().front();
  Context ctx{RunConfig{}, fs::path(f.out_dir), out, f.experiment};
  ctx.cfg.subcommand = sc->get_name() + (f.experiment.empty() ? "" : " " + f.experiment);
  try {
    if (!f.config.empty()) load_ini(f.config, ctx.cfg);
    for (const std::string& s : f.sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects section.key=value, got '" + s + "'");
      ctx.cfg.set(s.substr(0, eq), s.substr(eq + 1));
    }
    if (!f.seed.empty()) ctx.cfg.set("run.seed", f.seed);
    if (!f.workers.empty()) ctx.cfg.set("run.workers", f.workers);
    if (!f.u.empty()) ctx.cfg.set("boundary.u", f.u);
    if (!f.v.empty()) ctx.cfg.set("boundary.v", f.v);
    if (!f.tables.empty()) ctx.cfg.set("algebra.tables", f.tables);
    read_run(ctx);

    const std::string name = sc->get_name();
    if (name == "verify-algebra") return verify_algebra(ctx);
    if (name == "kernel") return kernel(ctx);
    if (name == "constant-a") return constant_a(ctx);
    if (name == "simulate") return simulate(ctx);
    if (name == "sample-stationary") return sample_stationary(ctx);
    return experiment(ctx);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return config_error;
  } catch (const she::PositivityLost& e) {
    err << "error: " << e.what() << "\n";
    return check_failed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return check_failed;
  }
}

}  // namespace kpzlab::cli
