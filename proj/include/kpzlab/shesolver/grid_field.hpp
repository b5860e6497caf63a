#pragma once

#include <vector>

#include "kpzlab/common/boundary_params.hpp"

namespace kpzlab::she {

/// Values on x_j = j dx, j = 0..N (or at cell centres (j + 1/2) dx, j < N).
///
/// A positive field may carry a log scale: the represented function is
/// values * exp(log_scale). The solver uses it to keep long runs in range.
struct GridField {
  std::vector<double> values;
  double dx = 0.0;
  double time = 0.0;
  double log_scale = 0.0;
  bool cell_centred = false;

  /// N + 1 node values with N dx = 1. Throws ConfigError for cells < 1.
  static GridField nodes(int cells, double fill = 0.0);
  template <class F>
  static GridField sample(int cells, F&& f) {
    GridField g = nodes(cells);
    for (int j = 0; j <= cells; ++j) g.values[j] = f(g.x(j));
    return g;
  }

  int cells() const { return cell_centred ? static_cast<int>(values.size()) : static_cast<int>(values.size()) - 1; }
  double x(int j) const { return cell_centred ? (j + 0.5) * dx : j * dx; }
  /// values[j] * exp(log_scale).
  double value(int j) const;
  /// Throws ConfigError unless the field is node based, N dx = 1 and all values are finite.
  void validate() const;
};

/// h = log Z (including the log scale). Throws std::domain_error naming the
/// first non-positive index.
GridField hopf_cole(const GridField& z);
/// Z = exp(h), log scale zero.
GridField exp_field(const GridField& h);

/// h - h(0).
GridField anchor(const GridField& h);

/// Forward differences (h_{j+1} - h_j) / dx at cell centres.
GridField burgers_field(const GridField& h);

struct BoundaryResidual {
  double left = 0.0;   // |field(0) - u|
  double right = 0.0;  // |field(1) + v|
};

/// Distance of the outermost Burgers values from the slopes u and -v.
BoundaryResidual boundary_residual(const GridField& burgers, const BoundaryParams& p);

}  // namespace kpzlab::she
