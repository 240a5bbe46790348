#pragma once

#include <array>
#include <vector>

#include "chiralmag/field.hpp"
#include "chiralmag/material.hpp"

namespace chiralmag {

/// A vector field padded with one ghost layer per face, holding the discrete
/// chiral boundary condition  dm/dnu = -kappa_b (m x nu).
///
/// With the midpoint discretization at a face of outward normal e_a and cell
/// size h_a, the ghost value is the interior neighbor rotated in the plane of
/// the two cyclic transverse components (e_b, e_c), a -> b -> c cyclic:
///
///   k = kappa_b * h_a / 2,   cos t = (1-k^2)/(1+k^2),  sin t = 2k/(1+k^2)
///   + face:  g_b = cos t * u_b - sin t * u_c,  g_c = sin t * u_b + cos t * u_c
///   - face:  same with t -> -t;  g_a = u_a on both faces.
///
/// The map is linear in the interior values and orthogonal, so ghost cells of
/// a unit-norm field are unit norm. Only face layers are ever written or
/// read; the stencils never touch edge or corner pad entries.
class GhostField {
 public:
  GhostField() = default;
  explicit GhostField(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }

  /// Per-axis half-step coefficients k = kappa_b * h_axis / 2.
  const std::array<double, 3>& kb() const { return kb_; }

  /// i in [-1, nx], j in [-1, ny], k in [-1, nz].
  double at(int c, int i, int j, int k) const {
    return data_[pad_index(c, i, j, k)];
  }
  double& at(int c, int i, int j, int k) {
    return data_[pad_index(c, i, j, k)];
  }

  std::size_t pad_index(int c, int i, int j, int k) const {
    return static_cast<std::size_t>(c) * comp_stride_ +
           (static_cast<std::size_t>(k + 1) * (grid_.ny + 2) + (j + 1)) *
               (grid_.nx + 2) +
           (i + 1);
  }

  friend void fill_ghosts_into(const VectorField& m,
                               const DimensionlessParams& params,
                               GhostField& out);

 private:
  GridSpec grid_;
  std::array<double, 3> kb_{0.0, 0.0, 0.0};
  std::size_t comp_stride_ = 0;
  std::vector<double> data_;
};

/// Copy the interior and fill all six ghost faces from params.kappa_b.
/// Linear in m; reuses out's storage when shapes match.
void fill_ghosts_into(const VectorField& m, const DimensionlessParams& params,
                      GhostField& out);

GhostField fill_ghosts(const VectorField& m, const DimensionlessParams& params);

}  // namespace chiralmag
