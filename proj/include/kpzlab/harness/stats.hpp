#pragma once

#include <vector>

namespace kpzlab::harness {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2), the Kolmogorov tail.
double kolmogorov_q(double lambda);

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value
/// Q((sqrt(ne) + 0.12 + 0.11 / sqrt(ne)) D), ne = n m / (n + m).
/// Throws ConfigError if either sample has fewer than 50 values.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct BatchMeans {
  double mean = 0.0;
  double se = 0.0;
  int batches = 0;
};

/// Mean of a time series with the standard error from non-overlapping batch means.
BatchMeans batch_means(const std::vector<double>& series, int batches = 20);

}  // namespace kpzlab::harness
