#include "kpzlab/harness/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kpzlab/common/errors.hpp"

namespace kpzlab::harness {

double kolmogorov_q(double lambda) {
  if (lambda < 1e-3) return 1.0;
  if (lambda < 1.0) {
    // Jacobi form, converges fast for small lambda:
    // 1 - Q = sqrt(2 pi) / lambda sum_{k>=1} exp(-(2k-1)^2 pi^2 / (8 lambda^2))
    constexpr double pi = std::numbers::pi;
    double s = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double t = std::exp(-(2.0 * k - 1) * (2.0 * k - 1) * pi * pi / (8.0 * lambda * lambda));
      s += t;
      if (t < 1e-18) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * pi) / lambda * s, 0.0, 1.0);
  }
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double t = std::exp(-2.0 * k * k * lambda * lambda);
    s += (k % 2 ? 1.0 : -1.0) * t;
    if (t < 1e-18) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.size() < 50 || b.size() < 50)
    throw ConfigError("KS test needs at least 50 values per sample, got " + std::to_string(a.size()) + " and " +
                      std::to_string(b.size()));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double n = static_cast<double>(a.size()), m = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(i / n - j / m));
  }
  const double ne = std::sqrt(n * m / (n + m));
  return {d, kolmogorov_q((ne + 0.12 + 0.11 / ne) * d)};
}

BatchMeans batch_means(const std::vector<double>& series, int batches) {
  if (batches < 2) throw ConfigError("need at least two batches");
  const std::size_t len = series.size() / batches;
  if (len < 1) throw ConfigError("series shorter than the number of batches");
  std::vector<double> means(batches);
  for (int b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::size_t k = 0; k < len; ++k) s += series[b * len + k];
    means[b] = s / len;
  }
  double mu = 0.0;
  for (double m : means) mu += m;
  mu /= batches;
  double v = 0.0;
  for (double m : means) v += (m - mu) * (m - mu);
  v /= (batches - 1);
  return {mu, std::sqrt(v / batches), batches};
}

}  // namespace kpzlab::harness
