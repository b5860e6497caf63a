#include "kpzlab/kernels/heat.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kpzlab/common/errors.hpp"

namespace kpzlab::kernels {

namespace {

void check_convention(const KernelConvention& conv) {
  if (!(conv.diffusion_coefficient > 0.0)) throw ConfigError("diffusion_coefficient must be positive");
}

}  // namespace

double gauss_kernel(double t, double x, KernelConvention conv) {
  check_convention(conv);
  if (!(t > 0.0)) throw std::domain_error("heat kernel needs t > 0, got t = " + std::to_string(t));
  const double s = 4.0 * conv.diffusion_coefficient * t;
  return std::exp(-x * x / s) / std::sqrt(std::numbers::pi * s);
}

KernelValue neumann_kernel(double t, double x, double y, int images, KernelConvention conv) {
  check_convention(conv);
  if (!(t > 0.0)) throw std::domain_error("Neumann kernel needs t > 0, got t = " + std::to_string(t));
  if (images < 1) throw ConfigError("images must be at least 1");
  // Sum from the outside in so that the small terms are added first. Using
  // |x - y| makes the result exactly symmetric in (x, y).
  const double p = x + y;
  const double d = std::abs(x - y);
  double sum = 0.0;
  for (int k = images; k >= 1; --k) {
    for (int m : {k, -k}) sum += gauss_kernel(t, p + 2.0 * m, conv) + gauss_kernel(t, d + 2.0 * m, conv);
  }
  sum += gauss_kernel(t, p, conv) + gauss_kernel(t, d, conv);

  // For |m| = k > M and x, y in [0,1] each of the four omitted terms has
  // |argument| >= 2k - 2. With q_k = (2k-2)^2 / (4 D t) the increments
  // q_{k+1} - q_k grow, so the tail is dominated by a geometric series.
  const double s = 4.0 * conv.diffusion_coefficient * t;
  const double first = 2.0 * images;  // 2(M+1) - 2
  const double ratio = std::exp(-4.0 * (2.0 * images + 1.0) / s);
  const double bound = 4.0 / std::sqrt(std::numbers::pi * s) * std::exp(-first * first / s) / (1.0 - ratio);
  return {sum, bound};
}

}  // namespace kpzlab::kernels
