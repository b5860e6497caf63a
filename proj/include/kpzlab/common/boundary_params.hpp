#pragma once

namespace kpzlab {

/// Boundary parameters (u, v) of the open KPZ equation and derived constants.
struct BoundaryParams {
  double u = 0.5;
  double v = -0.5;
  /// Boundary renormalisation constant; mollifier dependent (see kernels::constant_a).
  double a = 0.0;

  /// Robin coefficient c in dZ/dx = c Z at x = 0.
  double robin_left() const { return u - 0.5; }
  /// Robin coefficient c in dZ/dx = -c Z at x = 1.
  double robin_right() const { return v - 0.5; }

  double a1(double x) const { return 2.0 * (-2.0 * (v + a) * x + u + a); }
  double a2(double x) const {
    const double l = -2.0 * (v + a) * x + u + a;
    return 0.5 * (l * l - v - a);
  }

  /// h~ - h: the quadratic that turns the boundary slopes into Neumann conditions.
  double neumann_shift(double x) const { return 0.5 * (v + a) * x * x - (u + a) * x; }

  /// Upper bound for the Laplace coefficients when u + v > 0.
  double c_uv() const { return (u <= 0.0 || u >= 1.0) ? 2.0 : 2.0 * u; }
};

}  // namespace kpzlab
