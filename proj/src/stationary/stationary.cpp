#include "kpzlab/stationary/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kpzlab/common/errors.hpp"
#include "kpzlab/common/rng.hpp"

namespace kpzlab::stationary {

namespace {

template <class T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// beta_j = sqrt(var dx) * sum_{k <= j} xi_k
void integrate_increments(const std::vector<double>& xi, double step_sd, std::vector<double>& beta) {
  beta.resize(xi.size() + 1);
  beta[0] = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) beta[k + 1] = beta[k] + step_sd * xi[k];
}

int grid_index(double x, int cells) {
  const double s = x * cells;
  const long j = std::lround(s);
  if (j < 0 || j > cells || std::abs(s - j) > 1e-9 * cells)
    throw ConfigError("x = " + str(x) + " is not a grid point of the " + str(cells) + "-cell grid");
  return static_cast<int>(j);
}

double log_sum_exp(const std::vector<double>& a) {
  const double m = *std::max_element(a.begin(), a.end());
  double s = 0.0;
  for (double v : a) s += std::exp(v - m);
  return m + std::log(s);
}

}  // namespace

PathSample brownian_path(int cells, double variance, double drift, std::mt19937_64& rng) {
  if (cells < 1) throw ConfigError("cells must be at least 1, got " + str(cells));
  std::normal_distribution<double> nd;
  PathSample p;
  p.dx = 1.0 / cells;
  p.reference_variance = variance;
  p.values.resize(cells + 1);
  p.values[0] = 0.0;
  const double sd = std::sqrt(variance * p.dx);
  for (int j = 1; j <= cells; ++j) p.values[j] = p.values[j - 1] + drift * p.dx + sd * nd(rng);
  return p;
}

SampleEnsemble sample_bm_drift(double u, int cells, int n, std::uint64_t seed) {
  if (n < 1) throw ConfigError("samples must be at least 1, got " + str(n));
  SampleEnsemble e;
  e.cells = cells;
  e.set("source", "bm-drift");
  e.set("u", str(u));
  e.set("seed", str(seed));
  e.set("cells", str(cells));
  for (int i = 0; i < n; ++i) {
    auto rng = make_stream(seed, i, StreamTag::initial);
    e.rows.push_back({static_cast<std::uint64_t>(i), 0.0, brownian_path(cells, 1.0, u, rng).values});
  }
  return e;
}

double rn_log_weight(const std::vector<double>& beta, double dx, double u, double v) {
  const std::size_t n = beta.size();
  double integral = 0.5 * (std::exp(-2.0 * beta.front()) + std::exp(-2.0 * beta.back()));
  for (std::size_t j = 1; j + 1 < n; ++j) integral += std::exp(-2.0 * beta[j]);
  integral *= dx;
  return -2.0 * v * beta.back() - (u + v) * std::log(integral);
}

void check_regime(double u, double v, bool allow_outside) {
  if (allow_outside) return;
  if (!(u + v > 0.0) || !(std::min(u, v) > -1.0))
    throw RegimeError("(u, v) = (" + str(u) + ", " + str(v) +
                      ") is outside proven regime u + v > 0, min(u, v) > -1; set allow_outside_regime for exploratory runs");
}

void McmcConfig::validate() const {
  if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("rho must lie in (0, 1), got " + str(rho));
  if (burn_in < 0) throw ConfigError("burn_in must be non-negative");
  if (thinning < 1) throw ConfigError("thinning must be at least 1");
  if (!(burn_in < length)) throw ConfigError("burn_in must be smaller than length");
  if (cells < 1) throw ConfigError("cells must be at least 1");
}

double pcn_log_joint(const std::vector<double>& from, const std::vector<double>& to, double rho) {
  const double a = std::sqrt(1.0 - rho * rho);
  const double c = 0.5 * std::log(2.0 * std::numbers::pi);
  double s = 0.0;
  for (std::size_t k = 0; k < from.size(); ++k) {
    const double r = (to[k] - a * from[k]) / rho;
    s += -0.5 * from[k] * from[k] - c - 0.5 * r * r - c - std::log(rho);
  }
  return s;
}

McmcResult sample_stationary_mcmc(double u, double v, const McmcConfig& cfg) {
  cfg.validate();
  if (!cfg.neutral_weight) check_regime(u, v, cfg.allow_outside_regime);
  const double wu = cfg.neutral_weight ? 0.0 : u;
  const double wv = cfg.neutral_weight ? 0.0 : v;

  const int n = cfg.cells;
  const double dx = 1.0 / n;
  const double step_sd = std::sqrt(0.5 * dx);
  const double a = std::sqrt(1.0 - cfg.rho * cfg.rho);

  auto chain = make_stream(cfg.seed, 0, StreamTag::mcmc);
  auto fresh = make_stream(cfg.seed, 0, StreamTag::fresh_w);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> unif;

  std::vector<double> xi(n), prop(n), beta, beta_prop;
  for (double& z : xi) z = nd(chain);
  integrate_increments(xi, step_sd, beta);
  double lw = rn_log_weight(beta, dx, wu, wv);

  McmcResult out;
  out.samples.cells = n;
  out.samples.set("source", cfg.neutral_weight ? "mcmc-neutral" : "mcmc");
  out.samples.set("u", str(u));
  out.samples.set("v", str(v));
  out.samples.set("seed", str(cfg.seed));
  out.samples.set("cells", str(n));
  out.samples.set("rho", str(cfg.rho));
  out.samples.set("burn_in", str(cfg.burn_in));
  out.samples.set("thinning", str(cfg.thinning));
  out.samples.set("length", str(cfg.length));

  long accepted = 0;
  std::vector<double> trace;
  for (long it = 1; it <= cfg.length; ++it) {
    for (int k = 0; k < n; ++k) prop[k] = a * xi[k] + cfg.rho * nd(chain);
    integrate_increments(prop, step_sd, beta_prop);
    const double lw_prop = rn_log_weight(beta_prop, dx, wu, wv);
    if (std::log(unif(chain)) < lw_prop - lw) {
      xi.swap(prop);
      beta.swap(beta_prop);
      lw = lw_prop;
      ++accepted;
    }
    if (it > cfg.burn_in && (it - cfg.burn_in) % cfg.thinning == 0) {
      const PathSample w = brownian_path(n, 0.5, 0.0, fresh);
      std::vector<double> h(n + 1);
      for (int j = 0; j <= n; ++j) h[j] = w.values[j] + beta[j];
      out.samples.rows.push_back({out.betas.size(), 0.0, std::move(h)});
      out.betas.push_back(beta);
      trace.push_back(beta.back());
    }
  }
  out.acceptance_rate = double(accepted) / cfg.length;
  out.autocorrelation_time = trace.size() > 10 ? integrated_autocorrelation(trace) : 1.0;
  if (out.acceptance_rate <= 0.05 || out.acceptance_rate >= 0.95) {
    const double suggest = out.acceptance_rate <= 0.05 ? 0.5 * cfg.rho : std::min(0.95, 2.0 * cfg.rho);
    out.warnings.push_back("acceptance rate " + str(out.acceptance_rate) + " outside (0.05, 0.95); try rho = " + str(suggest));
  }
  out.samples.set("acceptance_rate", str(out.acceptance_rate));
  out.samples.set("autocorrelation_time", str(out.autocorrelation_time));
  return out;
}

Estimate estimate_normalization(double u, double v, int n, std::uint64_t seed, int cells, bool neutral_weight,
                                bool allow_outside_regime) {
  if (n < 2) throw ConfigError("samples must be at least 2, got " + str(n));
  if (!neutral_weight) check_regime(u, v, allow_outside_regime);
  const double wu = neutral_weight ? 0.0 : u;
  const double wv = neutral_weight ? 0.0 : v;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    auto rng = make_stream(seed, i, StreamTag::reference);
    const PathSample b = brownian_path(cells, 0.5, 0.0, rng);
    const double w = std::exp(rn_log_weight(b.values, b.dx, wu, wv));
    s += w;
    s2 += w * w;
  }
  const double m = s / n;
  return {m, std::sqrt(std::max(0.0, s2 / n - m * m) / (n - 1))};
}

ImportanceResult importance_moments(double u, double v, const std::vector<double>& xs, int n, std::uint64_t seed,
                                    int cells) {
  if (n < 2) throw ConfigError("samples must be at least 2, got " + str(n));
  std::vector<int> idx;
  for (double x : xs) idx.push_back(grid_index(x, cells));
  std::vector<double> lw(n);
  std::vector<std::vector<double>> vals(xs.size(), std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    auto rng = make_stream(seed, i, StreamTag::reference);
    const PathSample b = brownian_path(cells, 0.5, 0.0, rng);
    lw[i] = rn_log_weight(b.values, b.dx, u, v);
    for (std::size_t k = 0; k < xs.size(); ++k) vals[k][i] = b.values[idx[k]];
  }
  const double lse = log_sum_exp(lw);
  std::vector<double> w(n);
  double w2 = 0.0;
  for (int i = 0; i < n; ++i) {
    w[i] = std::exp(lw[i] - lse);
    w2 += w[i] * w[i];
  }
  ImportanceResult out;
  out.effective_sample_size = 1.0 / w2;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const auto& f = vals[k];
    double mu = 0.0;
    for (int i = 0; i < n; ++i) mu += w[i] * f[i];
    double m2 = 0.0;
    for (int i = 0; i < n; ++i) m2 += w[i] * (f[i] - mu) * (f[i] - mu);
    // delta method for self-normalised ratios
    double se_mu = 0.0, se_m2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = f[i] - mu;
      se_mu += w[i] * w[i] * d * d;
      se_m2 += w[i] * w[i] * (d * d - m2) * (d * d - m2);
    }
    // W contributes x / 2 to the variance and nothing to the mean.
    out.marginals.push_back({xs[k], {mu, std::sqrt(se_mu)}, {m2 + 0.5 * xs[k], std::sqrt(se_m2)}});
  }
  return out;
}

MarginalMoments sample_moments(const std::vector<double>& values, double x, double autocorrelation_time) {
  const double n = static_cast<double>(values.size());
  if (values.size() < 2) throw ConfigError("need at least two samples");
  double mu = 0.0;
  for (double v : values) mu += v;
  mu /= n;
  double m2 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = (v - mu) * (v - mu);
    m2 += d;
    m4 += d * d;
  }
  m4 /= n;
  const double var = m2 / (n - 1);
  const double tau = std::max(1.0, autocorrelation_time);
  return {x, {mu, std::sqrt(var * tau / n)}, {var, std::sqrt(std::max(0.0, m4 - var * var) * tau / n)}};
}

double integrated_autocorrelation(const std::vector<double>& trace) {
  const std::size_t n = trace.size();
  double mu = 0.0;
  for (double v : trace) mu += v;
  mu /= n;
  double c0 = 0.0;
  for (double v : trace) c0 += (v - mu) * (v - mu);
  c0 /= n;
  if (c0 == 0.0) return 1.0;
  double tau = 1.0;
  for (std::size_t lag = 1; lag < n / 2; ++lag) {
    double c = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) c += (trace[i] - mu) * (trace[i + lag] - mu);
    tau += 2.0 * c / n / c0;
    if (static_cast<double>(lag) >= 5.0 * tau) break;
  }
  return std::max(tau, 1e-3);
}

Estimate empirical_laplace(const SampleEnsemble& samples, const std::vector<double>& xs, const std::vector<double>& cs,
                           const BoundaryParams& p) {
  if (xs.size() != cs.size()) throw ConfigError("xs and cs must have the same length");
  double total = 0.0;
  for (double c : cs) {
    if (!(c >= 0.0)) throw ConfigError("Laplace coefficients must be non-negative, got " + str(c));
    total += c;
  }
  if (p.u + p.v > 0.0 && !(total < p.c_uv()))
    throw ConfigError("sum of Laplace coefficients " + str(total) + " must be below C_{u,v} = " + str(p.c_uv()));
  if (samples.rows.size() < 2) throw ConfigError("need at least two samples");
  std::vector<int> idx;
  for (double x : xs) idx.push_back(grid_index(x, samples.cells));
  const double n = static_cast<double>(samples.rows.size());
  double s = 0.0, s2 = 0.0;
  for (const auto& r : samples.rows) {
    double e = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) e += cs[k] * r.values[idx[k]];
    const double f = std::exp(-e);
    s += f;
    s2 += f * f;
  }
  const double m = s / n;
  return {m, std::sqrt(std::max(0.0, s2 / n - m * m) / (n - 1))};
}

}  // namespace kpzlab::stationary
