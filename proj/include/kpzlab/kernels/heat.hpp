#pragma once

namespace kpzlab::kernels {

/// Generator convention: dP/dt = D d^2P/dx^2. D = 1/2 matches the equation.
struct KernelConvention {
  double diffusion_coefficient = 0.5;
};

/// Whole-line heat kernel (4 pi D t)^{-1/2} exp(-x^2 / (4 D t)). Throws std::domain_error for t <= 0.
double gauss_kernel(double t, double x, KernelConvention conv = {});

struct KernelValue {
  double value = 0.0;
  double error_bound = 0.0;  // rigorous bound on the omitted image terms
};

/// Neumann heat kernel on [0,1] by the method of images, images |m| <= M.
KernelValue neumann_kernel(double t, double x, double y, int images = 20, KernelConvention conv = {});

}  // namespace kpzlab::kernels
