#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kpzlab/common/boundary_params.hpp"
#include "kpzlab/common/sample_ensemble.hpp"

namespace kpzlab::stationary {

/// Path on x_j = j dx with beta(0) = 0.
struct PathSample {
  std::vector<double> values;
  double dx = 0.0;
  double reference_variance = 1.0;  // variance per unit length of the reference Brownian motion
  double log_weight = 0.0;
};

/// Brownian path of the given variance per unit length plus drift.
PathSample brownian_path(int cells, double variance, double drift, std::mt19937_64& rng);

/// n paths of B(x) + u x, B standard Brownian motion.
SampleEnsemble sample_bm_drift(double u, int cells, int n, std::uint64_t seed);

/// -2 v beta(1) - (u + v) log int_0^1 exp(-2 beta), trapezoid rule on the grid.
double rn_log_weight(const std::vector<double>& beta, double dx, double u, double v);

/// Throws RegimeError unless u + v > 0 and min(u, v) > -1 (skipped when allow_outside).
void check_regime(double u, double v, bool allow_outside = false);

struct McmcConfig {
  double rho = 0.6;  // pCN step
  long burn_in = 2000;
  long thinning = 10;
  long length = 102000;  // total iterations including burn-in
  std::uint64_t seed = 0;
  int cells = 64;
  /// Zero both weight exponents; the target is then the reference measure.
  bool neutral_weight = false;
  bool allow_outside_regime = false;
  /// Throws ConfigError naming the parameter.
  void validate() const;
};

struct McmcResult {
  SampleEnsemble samples;                  // h = W + beta, one row per kept state
  std::vector<std::vector<double>> betas;  // kept chain states
  double acceptance_rate = 0.0;
  double autocorrelation_time = 0.0;  // of beta(1), in kept samples
  std::vector<std::string> warnings;
};

/// Preconditioned Crank-Nicolson Metropolis for the law of Y - Y(0), whose
/// density against the variance-1/2 Brownian motion is exp(rn_log_weight) / Z.
/// The proposal keeps the reference invariant, so acceptance uses only the
/// weight difference. Each kept state is combined with a fresh variance-1/2
/// Brownian path W.
McmcResult sample_stationary_mcmc(double u, double v, const McmcConfig& cfg);

/// log pi0(from) + log q(to | from) for the pCN kernel on standard normal coordinates.
/// Symmetric in (from, to), which is the reversibility used by the sampler.
double pcn_log_joint(const std::vector<double>& from, const std::vector<double>& to, double rho);

struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

/// Z = E[exp(rn_log_weight)] under the variance-1/2 reference, plain Monte Carlo.
Estimate estimate_normalization(double u, double v, int n, std::uint64_t seed, int cells = 64, bool neutral_weight = false,
                                bool allow_outside_regime = false);

/// Self-normalised importance sampling of the stationary marginals:
/// iid reference paths beta weighted by exp(rn_log_weight), h = W + beta.
struct MarginalMoments {
  double x = 0.0;
  Estimate mean;
  Estimate variance;
};
struct ImportanceResult {
  std::vector<MarginalMoments> marginals;
  double effective_sample_size = 0.0;
};
ImportanceResult importance_moments(double u, double v, const std::vector<double>& xs, int n, std::uint64_t seed,
                                    int cells = 64);

/// Mean and variance of the samples at node j with standard errors; a
/// positive autocorrelation time inflates the errors accordingly.
MarginalMoments sample_moments(const std::vector<double>& values, double x, double autocorrelation_time = 1.0);

/// Integrated autocorrelation time with the self-consistent window M >= 5 tau.
double integrated_autocorrelation(const std::vector<double>& trace);

/// Monte Carlo mean of exp(-sum c_k h(x_k)). For u + v > 0 the coefficients
/// must satisfy sum c_k < C_{u,v}; otherwise ConfigError. xs must be grid points.
Estimate empirical_laplace(const SampleEnsemble& samples, const std::vector<double>& xs, const std::vector<double>& cs,
                           const BoundaryParams& p);

}  // namespace kpzlab::stationary
