#pragma once

#include <cstdint>

#include "chiralmag/config.hpp"
#include "chiralmag/field.hpp"
#include "chiralmag/grid.hpp"

namespace chiralmag {

/// cols x rows grid of m = (0,0,-1) rectangles on a (0,0,1) background,
/// extending through the full thickness, the group centered in plane.
/// Membership is by cell center in the closed rectangle (with a femtometer
/// slack so edges that land exactly on cell centers stay included after
/// rounding). rows == 0 or cols == 0 gives the plain background.
/// Throws std::invalid_argument when the layout overflows the sample.
MagnetizationField init_blocks(const GridSpec& grid, double block_nm,
                               double spacing_nm, int rows, int cols);

/// Copy of base where every cell whose in-plane center distance from
/// (cx_nm, cy_nm) is <= radius_nm is redrawn uniformly on the unit sphere.
/// Each cell's draw is keyed by (seed, stream 0, linear cell index), so the
/// result does not depend on traversal order. radius_nm == 0 returns base
/// unchanged.
MagnetizationField init_random_circle(const MagnetizationField& base,
                                      double cx_nm, double cy_nm,
                                      double radius_nm, std::uint64_t seed);

/// Materialize an initializer spec on a grid. File states must match the
/// grid and be unit length; layout and file problems surface as ConfigError.
MagnetizationField build_initial_state(const InitializerConfig& cfg,
                                       const GridSpec& grid,
                                       std::uint64_t seed);

}  // namespace chiralmag
