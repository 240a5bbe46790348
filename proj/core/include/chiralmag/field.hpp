#pragma once

#include <vector>

#include "chiralmag/grid.hpp"
#include "chiralmag/vec3.hpp"

namespace chiralmag {

/// Cell-centered 3-vector field.
///
/// Storage is component-major: all of m1, then all of m2, then all of m3,
/// each component contiguous with x fastest, then y, then z. Snapshot files
/// dump this layout verbatim, so it is a documented contract, not an
/// implementation accident.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(const GridSpec& grid, double value = 0.0);

  const GridSpec& grid() const { return grid_; }
  int cells() const { return cells_; }
  int size() const { return 3 * cells_; }

  int index(int i, int j, int k) const { return grid_.index(i, j, k); }

  double at(int c, int idx) const { return data_[c * cells_ + idx]; }
  double& at(int c, int idx) { return data_[c * cells_ + idx]; }
  double at(int c, int i, int j, int k) const {
    return at(c, index(i, j, k));
  }
  double& at(int c, int i, int j, int k) { return at(c, index(i, j, k)); }

  Vec3 vec(int idx) const {
    return {data_[idx], data_[cells_ + idx], data_[2 * cells_ + idx]};
  }
  Vec3 vec(int i, int j, int k) const { return vec(index(i, j, k)); }
  void set_vec(int idx, const Vec3& v) {
    data_[idx] = v.x;
    data_[cells_ + idx] = v.y;
    data_[2 * cells_ + idx] = v.z;
  }

  double* component(int c) { return data_.data() + c * cells_; }
  const double* component(int c) const { return data_.data() + c * cells_; }

  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  void fill(double value);

 private:
  GridSpec grid_;
  int cells_ = 0;
  std::vector<double> data_;
};

/// Unit-norm magnetization field. The invariant max | |m|-1 | <= 1e-12 is
/// maintained by the operations that produce these (projection, init), not
/// by the type itself.
using MagnetizationField = VectorField;

/// Cell-centered scalar field (energy density maps and the like).
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const GridSpec& grid, double value = 0.0);

  const GridSpec& grid() const { return grid_; }
  int cells() const { return static_cast<int>(data_.size()); }
  double at(int idx) const { return data_[idx]; }
  double& at(int idx) { return data_[idx]; }
  double at(int i, int j, int k) const { return data_[grid_.index(i, j, k)]; }
  double& at(int i, int j, int k) { return data_[grid_.index(i, j, k)]; }
  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

 private:
  GridSpec grid_;
  std::vector<double> data_;
};

/// Constant field m = direction/|direction| everywhere.
/// Throws std::invalid_argument on a zero direction.
MagnetizationField new_uniform(const GridSpec& grid, const Vec3& direction);

/// Normalize every cell to unit length in place. Throws DegenerateStateError
/// naming the first cell whose vector is too short to normalize.
/// Returns the largest post-projection | |m| - 1 | (roundoff level).
double project_in_place(VectorField& field);

/// Normalizing copy of project_in_place.
MagnetizationField project(const VectorField& field);

/// Largest | |m| - 1 | over all cells.
double max_norm_deviation(const VectorField& field);

}  // namespace chiralmag
