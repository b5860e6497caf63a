#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "kpzlab/common/boundary_params.hpp"
#include "kpzlab/shesolver/grid_field.hpp"

namespace kpzlab::she {

enum class PositivityPolicy {
  exclude,  // flag the path, stop it, leave it out of summaries
  fail,     // throw PositivityLost
};

struct SimConfig {
  int cells = 64;
  double dt = 0.0;  // 0 selects dx^2 / 2
  double horizon = 1.0;
  int paths = 1;
  std::uint64_t seed = 0;
  /// Snapshot times in [0, horizon]; empty means {horizon}.
  std::vector<double> record_times;
  bool noise = true;
  PositivityPolicy positivity = PositivityPolicy::exclude;
  int workers = 1;

  double dx() const { return 1.0 / cells; }
  double dt_cap() const { return dt > 0.0 ? dt : 0.5 * dx() * dx(); }
  /// Throws ConfigError naming the parameter; in particular dt > dx^2 / 2.
  void validate() const;
};

class PositivityLost : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform step dt <= dt_cap such that every record time is a whole number of steps.
struct TimeGrid {
  double dt = 0.0;
  long steps = 0;
  std::vector<double> record_times;
  std::vector<long> record_steps;
};
TimeGrid plan_time_grid(const SimConfig& cfg);

struct PathResult {
  std::uint64_t index = 0;
  std::vector<GridField> snapshots;  // one per record time; empty if the path was excluded
  bool positivity_lost = false;
  double lost_at = 0.0;
};

struct Ensemble {
  BoundaryParams params;
  SimConfig config;
  TimeGrid time;
  std::vector<PathResult> paths;

  int excluded() const;
  double exclusion_rate() const;
};

/// Semi-implicit scheme for dZ = 1/2 Z'' dt + Z xi with Robin ghost points:
///   (I - dt/2 A) Z' = (I + dt/2 A) Z + Z eta sqrt(dt / (w_j dx)),
/// eta iid standard normal per node and step, w_j the trapezoid weights.
/// The noise of path i comes only from (seed, i), so two runs with the same
/// seed and index see the same noise whatever their initial data.
///
/// The optional observer sees the state after every step (node values
/// without the log scale), e.g. for time averages that need no snapshots.
using StepObserver = std::function<void(long step, double t, const std::vector<double>& z)>;
PathResult simulate_path(const GridField& z0, const BoundaryParams& p, const SimConfig& cfg, std::uint64_t index,
                         const StepObserver& observer = {});

/// cfg.paths independent paths from a common initial condition.
Ensemble simulate_she(const GridField& z0, const BoundaryParams& p, const SimConfig& cfg);
/// Initial condition per path index.
Ensemble simulate_she(const std::function<GridField(std::uint64_t)>& initial, const BoundaryParams& p,
                      const SimConfig& cfg);

enum class Observable { z, h, anchored_h };

struct SummaryRow {
  double t = 0.0;
  double x = 0.0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  int n_effective = 0;    // paths that kept positivity
};

/// Per (record time, node) mean and variance over the retained paths.
std::vector<SummaryRow> summarize(const Ensemble& e, Observable obs);

/// Pairwise sum; the grouping depends only on the length.
double pairwise_sum(const double* v, std::size_t n);

}  // namespace kpzlab::she
