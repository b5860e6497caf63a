#pragma once

#include <vector>

#include "kpzlab/common/boundary_params.hpp"
#include "kpzlab/kernels/heat.hpp"

namespace kpzlab::kernels {

/// Uniform grid x_j = j dx, j = 0..N, with Crank-Nicolson time stepping.
struct GridSpec {
  int cells = 64;     // N
  double dt = 0.0;    // 0 selects dx^2 / 2
  double dx() const { return 1.0 / cells; }
  double time_step() const { return dt > 0.0 ? dt : 0.5 * dx() * dx(); }
};

/// Discrete semigroup of D d^2/dx^2 on [0,1] with Robin conditions
/// dZ/dx(0) = cl Z(0), dZ/dx(1) = -cr Z(1), imposed by centred ghost points.
///
/// The operator is self-adjoint for the trapezoid weights, so kernels built
/// from it are symmetric.
class RobinSemigroup {
 public:
  /// Throws ConfigError unless dt <= dx^2 / 2.
  RobinSemigroup(double cl, double cr, GridSpec grid, KernelConvention conv = {});
  RobinSemigroup(const BoundaryParams& p, GridSpec grid, KernelConvention conv = {})
      : RobinSemigroup(p.robin_left(), p.robin_right(), grid, conv) {}

  int cells() const { return n_; }
  double dx() const { return dx_; }
  double dt() const { return dt_; }
  /// Trapezoid weights (1/2 at the ends).
  const std::vector<double>& weights() const { return w_; }

  /// (A z)_j for the discrete generator A.
  std::vector<double> apply_generator(const std::vector<double>& z) const;
  /// One step: (I - dt/2 A) z' = (I + dt/2 A) z, in place.
  void step(std::vector<double>& z) const;
  /// out = (I + dt/2 A) z, without allocation.
  void explicit_half(const std::vector<double>& z, std::vector<double>& out) const;
  /// Solves (I - dt/2 A) z' = rhs in place.
  void implicit_solve(std::vector<double>& rhs) const;
  /// round(t / dt) steps.
  int steps_for(double t) const;
  std::vector<double> evolve(std::vector<double> z, double t) const;

 private:
  int n_;
  double dx_, dt_, diff_;
  double cl_, cr_;
  std::vector<double> w_;
  // Tridiagonal A: sub, diag, super.
  std::vector<double> lo_, di_, up_;
  // Thomas factorisation of I - dt/2 A.
  std::vector<double> fac_c_, fac_m_;
};

/// P_t(x, y) for the Robin problem, from a discrete delta at grid point y.
/// x and y must be grid points. The time step is reduced as needed so that
/// t is a whole number of steps.
double robin_kernel(double t, double x, double y, const BoundaryParams& p, GridSpec grid, KernelConvention conv = {});

/// Whole kernel column x -> P_t(x, y).
std::vector<double> robin_kernel_column(double t, double y, const BoundaryParams& p, GridSpec grid,
                                        KernelConvention conv = {});

}  // namespace kpzlab::kernels
