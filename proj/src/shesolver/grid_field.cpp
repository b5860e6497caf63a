#include "kpzlab/shesolver/grid_field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kpzlab/common/errors.hpp"

namespace kpzlab::she {

GridField GridField::nodes(int cells, double fill) {
  if (cells < 1) throw ConfigError("cells must be at least 1, got " + std::to_string(cells));
  GridField g;
  g.values.assign(cells + 1, fill);
  g.dx = 1.0 / cells;
  return g;
}

double GridField::value(int j) const {
  return log_scale == 0.0 ? values[j] : values[j] * std::exp(log_scale);
}

void GridField::validate() const {
  if (cell_centred) throw ConfigError("expected a node based field");
  if (values.size() < 2) throw ConfigError("field needs at least two nodes");
  if (std::abs(cells() * dx - 1.0) > 1e-12) throw ConfigError("field spacing does not satisfy N dx = 1");
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!std::isfinite(values[j])) throw ConfigError("field value at index " + std::to_string(j) + " is not finite");
  }
}

GridField hopf_cole(const GridField& z) {
  GridField h = z;
  h.log_scale = 0.0;
  for (std::size_t j = 0; j < z.values.size(); ++j) {
    if (!(z.values[j] > 0.0))
      throw std::domain_error("Hopf-Cole transform needs Z > 0; Z[" + std::to_string(j) + "] = " + std::to_string(z.values[j]));
    h.values[j] = std::log(z.values[j]) + z.log_scale;
  }
  return h;
}

GridField exp_field(const GridField& h) {
  GridField z = h;
  z.log_scale = 0.0;
  for (std::size_t j = 0; j < h.values.size(); ++j) z.values[j] = std::exp(h.values[j] + h.log_scale);
  return z;
}

GridField anchor(const GridField& h) {
  GridField out = h;
  out.log_scale = 0.0;
  const double base = h.values.front();
  for (double& v : out.values) v -= base;
  out.values.front() = 0.0;
  return out;
}

GridField burgers_field(const GridField& h) {
  GridField out;
  out.dx = h.dx;
  out.time = h.time;
  out.cell_centred = true;
  out.values.resize(h.values.size() - 1);
  for (std::size_t j = 0; j + 1 < h.values.size(); ++j) out.values[j] = (h.values[j + 1] - h.values[j]) / h.dx;
  return out;
}

BoundaryResidual boundary_residual(const GridField& burgers, const BoundaryParams& p) {
  return {std::abs(burgers.values.front() - p.u), std::abs(burgers.values.back() + p.v)};
}

}  // namespace kpzlab::she
