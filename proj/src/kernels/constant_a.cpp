#include "kpzlab/kernels/constant_a.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "kpzlab/common/errors.hpp"

namespace kpzlab::kernels {

namespace {

// 8-point Gauss-Legendre on [-1, 1]; exact for polynomials of degree 15.
constexpr std::array<double, 4> kNodes = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                          0.9602898564975363};
constexpr std::array<double, 4> kWeights = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                            0.1012285362903763};
constexpr int kPanels = 4;

template <class F>
double gauss_legendre(F&& f, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  const double w = (hi - lo) / kPanels;
  double sum = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    const double mid = lo + (p + 0.5) * w;
    const double half = 0.5 * w;
    for (std::size_t i = 0; i < kNodes.size(); ++i)
      sum += kWeights[i] * half * (f(mid - half * kNodes[i]) + f(mid + half * kNodes[i]));
  }
  return sum;
}

double profile_mass(const std::function<double(double)>& profile, double radius) {
  return gauss_legendre([&](double z) { return profile(z / radius) / radius; }, -radius, radius);
}

// Polar integral over the upper half plane (or the whole s-axis strip when
// full is set) of G(theta) r^2 psi_t(r^2 cos^2) psi_x(r sin), midpoint rule.
double polar_midpoint(const Mollifier& rho, int n_theta, int n_r, bool full, double diffusion) {
  const double rt = rho.time_radius;
  const double rx = rho.space_radius;
  const double lo = full ? -0.5 * std::numbers::pi : 0.0;
  const double hi = 0.5 * std::numbers::pi;
  const double dtheta = (hi - lo) / n_theta;
  const double c_gauss = 4.0 / std::sqrt(4.0 * std::numbers::pi * diffusion);
  std::vector<double> rows(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    const double th = lo + (i + 0.5) * dtheta;
    const double c = std::cos(th);
    const double s = std::sin(th);
    const double tn = std::abs(s) / c;
    const double g = 2.0 * c * std::erfc(tn / std::numbers::sqrt2) -
                     c_gauss * std::abs(s) * std::exp(-tn * tn / (4.0 * diffusion));
    const double reach = std::min(std::sqrt(2.0 * rt) / c, 2.0 * rx / std::abs(s));
    const double dr = reach / n_r;
    double inner = 0.0;
    for (int j = 0; j < n_r; ++j) {
      const double r = (j + 0.5) * dr;
      inner += r * r * autocorrelation(rho.time_profile, rt, r * r * c * c) *
               autocorrelation(rho.space_profile, rx, r * s);
    }
    rows[i] = g * inner * dr;
  }
  // pairwise sum keeps the result independent of how the rows were produced
  while (rows.size() > 1) {
    std::vector<double> next((rows.size() + 1) / 2);
    for (std::size_t k = 0; k < next.size(); ++k)
      next[k] = rows[2 * k] + (2 * k + 1 < rows.size() ? rows[2 * k + 1] : 0.0);
    rows.swap(next);
  }
  const double total = rows.empty() ? 0.0 : rows[0] * dtheta;
  return full ? total : 2.0 * total;
}

}  // namespace

Mollifier Mollifier::bump(double time_radius, double space_radius) {
  auto bump = [](double z) {
    if (std::abs(z) >= 1.0) return 0.0;
    const double q = 1.0 - z * z;
    return 35.0 / 32.0 * q * q * q;
  };
  return Mollifier{"bump3", time_radius, space_radius, bump, bump};
}

double Mollifier::time_mass() const { return profile_mass(time_profile, time_radius); }
double Mollifier::space_mass() const { return profile_mass(space_profile, space_radius); }

void Mollifier::validate() const {
  if (!(time_radius > 0.0) || !(space_radius > 0.0)) throw ConfigError("mollifier radii must be positive");
  if (!time_profile || !space_profile) throw ConfigError("mollifier '" + name + "' has no profile");
  for (double m : {time_mass(), space_mass()}) {
    if (!(std::abs(m - 1.0) <= 1e-10))
      throw ConfigError("mollifier '" + name + "' is not normalised (mass " + std::to_string(m) + ")");
  }
}

double autocorrelation(const std::function<double(double)>& profile, double radius, double tau) {
  const double t = std::abs(tau) / radius;
  if (t >= 2.0) return 0.0;
  return gauss_legendre([&](double z) { return profile(z) * profile(z + t); }, -1.0, 1.0 - t) / radius;
}

double boundary_integrand(double s, double y, KernelConvention conv) {
  if (s == 0.0) return 0.0;
  const double ay = std::abs(y);
  const double half_erfc = 0.5 * std::erfc(ay / std::sqrt(2.0 * std::abs(s)));
  if (s < 0.0) return half_erfc;
  return half_erfc - 2.0 * ay * gauss_kernel(s, y, conv);
}

ConstantA constant_a(const Mollifier& rho, QuadratureParams q, KernelConvention conv) {
  rho.validate();
  if (q.angular < 1 || q.radial < 1) throw ConfigError("quadrature resolution must be positive");
  if (!(conv.diffusion_coefficient > 0.0)) throw ConfigError("diffusion_coefficient must be positive");
  const bool full = !q.use_symmetry;
  const int mult = full ? 2 : 1;
  ConstantA out;
  out.coarse = polar_midpoint(rho, mult * q.angular, q.radial, full, conv.diffusion_coefficient);
  out.fine = polar_midpoint(rho, 2 * mult * q.angular, 2 * q.radial, full, conv.diffusion_coefficient);
  out.value = (4.0 * out.fine - out.coarse) / 3.0;
  out.error_estimate = std::abs(out.value - out.fine);
  return out;
}

}  // namespace kpzlab::kernels
