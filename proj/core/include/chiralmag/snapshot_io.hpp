#pragma once

#include <string>

#include "chiralmag/field.hpp"

namespace chiralmag {

/// Binary snapshot layout (all integers and floats little-endian):
///
///   bytes 0-7   magic "CMAGFLD1"
///   u32         format version (1)
///   u32         component count (3 for fields, 1 for scalar maps)
///   u32 x3      nx, ny, nz
///   f64 x3      hx, hy, hz (dimensionless cell sizes)
///   f64         length scale L in meters
///   payload     ncomp * nx*ny*nz f64, component-major, x fastest
///
/// The payload order matches VectorField storage exactly.
void write_snapshot(const std::string& path, const VectorField& field);
void write_snapshot(const std::string& path, const ScalarField& field);

VectorField read_snapshot(const std::string& path);
ScalarField read_scalar_snapshot(const std::string& path);

/// Legacy VTK structured-points export (ASCII), cell centers as points,
/// coordinates in nanometers. name: the dataset label in the file.
void write_vtk(const std::string& path, const VectorField& field,
               const std::string& name);
void write_vtk(const std::string& path, const ScalarField& field,
               const std::string& name);

}  // namespace chiralmag
