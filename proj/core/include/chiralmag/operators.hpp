#pragma once

#include "chiralmag/boundary.hpp"
#include "chiralmag/drive.hpp"
#include "chiralmag/field.hpp"
#include "chiralmag/material.hpp"

namespace chiralmag {

/// First derivative of component c along an axis at one cell, using the
/// ghost-informed stencils: one-sided over a single spacing at the first and
/// last cell of the axis, centered over two spacings in between. An axis with
/// a single cell uses the centered difference across its two ghosts.
double ghost_derivative(const GhostField& g, int c, int axis, int i, int j,
                        int k);

/// Standard 7-point Laplacian with ghost closure, all components.
VectorField laplacian(const GhostField& g);
void laplacian_into(const GhostField& g, VectorField& out);

/// curl m with the ghost_derivative stencils.
VectorField curl(const GhostField& g);
void curl_into(const GhostField& g, VectorField& out);

/// Fused eps * laplacian(x) - kappa * curl(x); the implicit operator core.
void exchange_dmi_into(const GhostField& g, double eps, double kappa,
                       VectorField& out);

/// Discrete energy: midpoint quadrature of
///   eps/2 |grad m|^2 + kappa/2 (curl m) . m - h_e . m + q/2 (m2^2 + m3^2)
/// over all cells, gradient and curl taken with the ghost stencils. Only the
/// uniform Zeeman field contributes; local pulses and currents do not.
double energy(const VectorField& m, const DimensionlessParams& params,
              const DriveSpec& drive);
double energy(const VectorField& m, const DimensionlessParams& params);

struct EnergyDensityMaps {
  ScalarField non_dmi;  ///< exchange + Zeeman + anisotropy density
  ScalarField dmi;      ///< kappa/2 (curl m) . m
  ScalarField total;    ///< sum of the two
};

/// Per-cell energy densities with the same stencils as energy(); summing
/// total times the cell volume reproduces energy().
EnergyDensityMaps energy_density_maps(const VectorField& m,
                                      const DimensionlessParams& params,
                                      const DriveSpec& drive);
EnergyDensityMaps energy_density_maps(const VectorField& m,
                                      const DimensionlessParams& params);

/// Topological charge of one z-layer (0-based), midpoint quadrature of
/// (1/4pi) m . (dx m x dy m). Derivatives use interior values only (one-sided
/// at the slice edges), so any uniform state gives exactly zero.
double skyrmion_number(const VectorField& m, int z_layer);

/// Mid-depth layer variant (layer nz/2).
double skyrmion_number(const VectorField& m);

/// Arithmetic mean of each component over all cells.
Vec3 spatial_average(const VectorField& m);

}  // namespace chiralmag
