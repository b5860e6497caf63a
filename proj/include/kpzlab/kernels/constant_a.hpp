#pragma once

#include <functional>
#include <string>

#include "kpzlab/kernels/heat.hpp"

namespace kpzlab::kernels {

/// Separable space-time mollifier rho(s, y) = rt(s / Rt) / Rt * rx(y / Rx) / Rx,
/// each profile supported in [-1, 1] and of unit mass.
struct Mollifier {
  std::string name = "bump3";
  double time_radius = 1.0;
  double space_radius = 1.0;
  std::function<double(double)> time_profile;
  std::function<double(double)> space_profile;

  /// (35/32)(1 - z^2)^3 in both variables.
  static Mollifier bump(double time_radius = 1.0, double space_radius = 1.0);
  /// Mass of each scaled profile, by quadrature.
  double time_mass() const;
  double space_mass() const;
  /// Throws ConfigError if a radius is not positive or a mass differs from 1 by more than 1e-10.
  void validate() const;
};

struct QuadratureParams {
  int angular = 128;  // midpoint nodes in the polar angle
  int radial = 128;   // midpoint nodes along each ray
  /// Integrate y >= 0 and double, using evenness in y.
  bool use_symmetry = true;
};

struct ConstantA {
  double value = 0.0;
  double error_estimate = 0.0;  // distance between extrapolated and finer midpoint value
  double coarse = 0.0;          // midpoint value at the given resolution
  double fine = 0.0;            // midpoint value at twice the resolution
};

/// Autocorrelation psi(tau) = int r(z) r(z + tau) dz of a scaled profile.
double autocorrelation(const std::function<double(double)>& profile, double radius, double tau);

/// The bracket 1/2 - Erf(|y| / sqrt(2|s|)) / 2 - 2|y| N(s, y) with N the
/// forward heat kernel (zero for s <= 0).
double boundary_integrand(double s, double y, KernelConvention conv = {});

/// a = int (rho_bar * rho)(s, y) [bracket] ds dy.
///
/// Substituting s = +-sigma^2 makes the bracket, times the Jacobian,
/// homogeneous of degree one in (sigma, y); in polar coordinates the
/// integrand is then smooth and a midpoint rule with one Richardson step is used.
ConstantA constant_a(const Mollifier& rho = Mollifier::bump(), QuadratureParams q = {}, KernelConvention conv = {});

}  // namespace kpzlab::kernels
