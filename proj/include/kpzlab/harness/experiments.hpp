#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kpzlab/common/sample_ensemble.hpp"
#include "kpzlab/harness/report.hpp"
#include "kpzlab/shesolver/grid_field.hpp"
#include "kpzlab/stationary/stationary.hpp"

namespace kpzlab::harness {

/// n anchored samples of the stationary law: Brownian motion with drift for
/// u + v = 0, the pCN chain for u + v > 0 (thinning kept, length extended to
/// give n states). Other (u, v) raise RegimeError unless the chain config allows it.
SampleEnsemble draw_stationary(double u, double v, int n, int cells, std::uint64_t seed,
                               stationary::McmcConfig mcmc = {});

enum class InitialLaw {
  stationary,  // drawn from draw_stationary
  flat,        // h = 0, a deliberately wrong law used as a control
};

struct StationarityConfig {
  double u = 0.5;
  double v = -0.5;
  int paths = 1000;
  double horizon = 1.0;
  int cells = 64;
  std::uint64_t seed = 7;
  std::vector<double> xs = {0.25, 0.5, 0.75, 1.0};
  double alpha = 0.01;  // family-wise level, Bonferroni over xs
  InitialLaw initial = InitialLaw::stationary;
  stationary::McmcConfig mcmc;
  int workers = 1;
};

/// Evolves n initial states to the horizon and compares the anchored
/// marginals at xs with an independent stationary ensemble by two-sample KS.
/// With the stationary initial law the check is "all adjusted p > alpha";
/// with the flat control it is "some adjusted p < alpha".
TestReport stationarity_experiment(const StationarityConfig& cfg);

enum class Functional { endpoint, maximum, integral, constant };
Functional parse_functional(const std::string& name);
std::string to_string(Functional f);
/// F applied to the anchored profile of node values z (log h = log z).
double apply_functional(Functional f, const std::vector<double>& z, double dx);

struct ErgodicConfig {
  double u = 0.5;
  double v = -0.5;
  Functional functional = Functional::endpoint;
  double horizon = 50.0;
  double sample_every = 0.01;
  int cells = 64;
  std::uint64_t seed = 7;
  int batches = 20;
  int reference_samples = 10000;
  stationary::McmcConfig mcmc;
};

/// Time average of F along one long path started from a stationary sample,
/// against E[F] from the direct sampler (exactly u for F = h(1), u + v = 0).
TestReport ergodic_average(const ErgodicConfig& cfg);

struct CouplingConfig {
  double u = 0.5;
  double v = -0.5;
  int cells = 64;
  double horizon = 1.0;
  int curve_points = 10;  // D(t) recorded at horizon * k / curve_points
  int realizations = 1;   // noise indices 0..realizations-1
  std::uint64_t seed = 7;
  int workers = 1;
};

/// Two solutions driven by the same discrete noise; D(t) = max_j |anchored
/// difference|. Exploratory: the report carries the curves and the fraction
/// of realizations with D(T) < D(0), and no pass/fail checks.
TestReport coupling_experiment(const she::GridField& h0, const she::GridField& h1, const CouplingConfig& cfg);

struct CrossSamplerConfig {
  double u = 1.0;
  double v = 1.0;
  std::vector<double> xs = {0.5, 1.0};
  int cells = 64;
  std::uint64_t seed = 7;
  stationary::McmcConfig mcmc;
  int importance_samples = 100000;
  int spde_paths = 500;
  double spde_horizon = 3.0;
  int workers = 1;
};

/// Mean and variance of h(x) from the pCN chain, importance sampling and the
/// SPDE run from flat data to a long horizon; every pair must agree within 3
/// combined standard errors.
TestReport cross_sampler_experiment(const CrossSamplerConfig& cfg);

}  // namespace kpzlab::harness
