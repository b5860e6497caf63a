#include "kpzlab/kernels/robin.hpp"

#include <cmath>
#include <sstream>

#include "kpzlab/common/errors.hpp"

namespace kpzlab::kernels {

RobinSemigroup::RobinSemigroup(double cl, double cr, GridSpec grid, KernelConvention conv)
    : n_(grid.cells), dx_(grid.dx()), dt_(grid.time_step()), diff_(conv.diffusion_coefficient), cl_(cl), cr_(cr) {
  if (n_ < 2) throw ConfigError("cells must be at least 2");
  if (!(diff_ > 0.0)) throw ConfigError("diffusion_coefficient must be positive");
  if (!(dt_ > 0.0) || dt_ > 0.5 * dx_ * dx_ * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dt = " << dt_ << " violates the stability bound dt <= dx^2/2 = " << 0.5 * dx_ * dx_;
    throw ConfigError(os.str());
  }
  const int m = n_ + 1;
  w_.assign(m, 1.0);
  w_.front() = w_.back() = 0.5;

  const double k = diff_ / (dx_ * dx_);
  lo_.assign(m, k);
  up_.assign(m, k);
  di_.assign(m, -2.0 * k);
  // Ghost points Z_{-1} = Z_1 - 2 dx cl Z_0 and Z_{N+1} = Z_{N-1} - 2 dx cr Z_N.
  lo_[0] = 0.0;
  up_[0] = 2.0 * k;
  di_[0] = -2.0 * k * (1.0 + dx_ * cl_);
  up_[n_] = 0.0;
  lo_[n_] = 2.0 * k;
  di_[n_] = -2.0 * k * (1.0 + dx_ * cr_);

  // Thomas factorisation of I - dt/2 A.
  const double h = 0.5 * dt_;
  fac_c_.assign(m, 0.0);
  fac_m_.assign(m, 0.0);
  double denom = 1.0 - h * di_[0];
  fac_m_[0] = 1.0 / denom;
  fac_c_[0] = -h * up_[0] * fac_m_[0];
  for (int j = 1; j < m; ++j) {
    denom = (1.0 - h * di_[j]) - (-h * lo_[j]) * fac_c_[j - 1];
    fac_m_[j] = 1.0 / denom;
    fac_c_[j] = -h * up_[j] * fac_m_[j];
  }
}

std::vector<double> RobinSemigroup::apply_generator(const std::vector<double>& z) const {
  std::vector<double> out(z.size());
  for (int j = 0; j <= n_; ++j) {
    double s = di_[j] * z[j];
    if (j > 0) s += lo_[j] * z[j - 1];
    if (j < n_) s += up_[j] * z[j + 1];
    out[j] = s;
  }
  return out;
}

void RobinSemigroup::explicit_half(const std::vector<double>& z, std::vector<double>& out) const {
  const double h = 0.5 * dt_;
  out.resize(z.size());
  out[0] = z[0] + h * (di_[0] * z[0] + up_[0] * z[1]);
  for (int j = 1; j < n_; ++j) out[j] = z[j] + h * (lo_[j] * z[j - 1] + di_[j] * z[j] + up_[j] * z[j + 1]);
  out[n_] = z[n_] + h * (lo_[n_] * z[n_ - 1] + di_[n_] * z[n_]);
}

void RobinSemigroup::implicit_solve(std::vector<double>& z) const {
  const double h = 0.5 * dt_;
  // Forward sweep then back substitution.
  z[0] *= fac_m_[0];
  for (int j = 1; j <= n_; ++j) z[j] = (z[j] + h * lo_[j] * z[j - 1]) * fac_m_[j];
  for (int j = n_ - 1; j >= 0; --j) z[j] -= fac_c_[j] * z[j + 1];
}

void RobinSemigroup::step(std::vector<double>& z) const {
  std::vector<double> rhs;
  explicit_half(z, rhs);
  implicit_solve(rhs);
  z.swap(rhs);
}

int RobinSemigroup::steps_for(double t) const { return static_cast<int>(std::llround(t / dt_)); }

std::vector<double> RobinSemigroup::evolve(std::vector<double> z, double t) const {
  const int steps = steps_for(t);
  std::vector<double> rhs(z.size());
  for (int s = 0; s < steps; ++s) {
    explicit_half(z, rhs);
    implicit_solve(rhs);
    z.swap(rhs);
  }
  return z;
}

namespace {

int grid_index(double x, int cells, const char* what) {
  const double scaled = x * cells;
  const long j = std::lround(scaled);
  if (j < 0 || j > cells || std::abs(scaled - static_cast<double>(j)) > 1e-9 * cells) {
    std::ostringstream os;
    os << what << " = " << x << " is not a grid point of the " << cells << "-cell grid";
    throw ConfigError(os.str());
  }
  return static_cast<int>(j);
}

}  // namespace

std::vector<double> robin_kernel_column(double t, double y, const BoundaryParams& p, GridSpec grid,
                                        KernelConvention conv) {
  if (!(t > 0.0)) throw std::domain_error("Robin kernel needs t > 0");
  // Shrink the step so that an integer number of steps lands on t.
  const double cap = grid.time_step();
  grid.dt = t / std::ceil(t / cap - 1e-9);
  if (grid.dt > cap) grid.dt = cap;
  const RobinSemigroup sg(p, grid, conv);
  const int j = grid_index(y, sg.cells(), "y");
  std::vector<double> z(sg.cells() + 1, 0.0);
  z[j] = 1.0 / (sg.weights()[j] * sg.dx());
  return sg.evolve(std::move(z), t);
}

double robin_kernel(double t, double x, double y, const BoundaryParams& p, GridSpec grid, KernelConvention conv) {
  const int i = grid_index(x, grid.cells, "x");
  return robin_kernel_column(t, y, p, grid, conv)[i];
}

}  // namespace kpzlab::kernels
