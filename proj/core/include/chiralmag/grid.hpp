#pragma once

#include <cmath>

namespace chiralmag {

/// Uniform structured grid of cell-centered unknowns on a box domain.
///
/// Coordinates are dimensionless: physical lengths divided by the material
/// length scale L. Cell centers sit at half grid points, x_i = (i + 1/2) hx
/// for 0-based i in [0, nx). Ghost layers referenced by the stencils live at
/// i = -1 and i = nx (one layer per face, no edge or corner ghosts).
struct GridSpec {
  int nx = 1, ny = 1, nz = 1;
  double hx = 1.0, hy = 1.0, hz = 1.0;
  double length_scale_m = 1.0;  ///< L in meters, for unit conversions only.

  int cell_count() const { return nx * ny * nz; }
  double cell_volume() const { return hx * hy * hz; }

  double x_center(int i) const { return (i + 0.5) * hx; }
  double y_center(int j) const { return (j + 0.5) * hy; }
  double z_center(int k) const { return (k + 0.5) * hz; }

  int dim(int axis) const { return axis == 0 ? nx : (axis == 1 ? ny : nz); }
  double spacing(int axis) const {
    return axis == 0 ? hx : (axis == 1 ? hy : hz);
  }

  /// Linear cell index, x fastest, then y, then z.
  int index(int i, int j, int k) const { return (k * ny + j) * nx + i; }

  bool same_shape(const GridSpec& o) const {
    return nx == o.nx && ny == o.ny && nz == o.nz && hx == o.hx &&
           hy == o.hy && hz == o.hz;
  }

  void validate() const;
};

}  // namespace chiralmag
