#include "chiralmag/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chiralmag/errors.hpp"

namespace chiralmag {

void GridSpec::validate() const {
  if (nx < 1 || ny < 1 || nz < 1)
    throw std::invalid_argument("grid: cell counts must be >= 1");
  if (!(hx > 0.0) || !(hy > 0.0) || !(hz > 0.0))
    throw std::invalid_argument("grid: cell sizes must be > 0");
  if (!(length_scale_m > 0.0))
    throw std::invalid_argument("grid: length scale must be > 0");
}

VectorField::VectorField(const GridSpec& grid, double value)
    : grid_(grid), cells_(grid.cell_count()) {
  grid_.validate();
  data_.assign(3 * static_cast<std::size_t>(cells_), value);
}

void VectorField::fill(double value) {
  std::fill(data_.begin(), data_.end(), value);
}

ScalarField::ScalarField(const GridSpec& grid, double value) : grid_(grid) {
  grid_.validate();
  data_.assign(static_cast<std::size_t>(grid.cell_count()), value);
}

MagnetizationField new_uniform(const GridSpec& grid, const Vec3& direction) {
  const double len = norm(direction);
  if (!(len > 0.0))
    throw std::invalid_argument("new_uniform: direction must be nonzero");
  MagnetizationField m(grid);
  const Vec3 u = direction * (1.0 / len);
  const int n = m.cells();
  for (int c = 0; c < 3; ++c) {
    double* p = m.component(c);
    std::fill(p, p + n, u[c]);
  }
  return m;
}

namespace {

[[noreturn]] void throw_degenerate(const GridSpec& g, int idx) {
  const int i = idx % g.nx;
  const int j = (idx / g.nx) % g.ny;
  const int k = idx / (g.nx * g.ny);
  throw DegenerateStateError("project: zero-length magnetization at cell (" +
                             std::to_string(i) + ", " + std::to_string(j) +
                             ", " + std::to_string(k) + ")");
}

}  // namespace

double project_in_place(VectorField& field) {
  const int n = field.cells();
  double* m1 = field.component(0);
  double* m2 = field.component(1);
  double* m3 = field.component(2);
  double worst = 0.0;
  for (int idx = 0; idx < n; ++idx) {
    const double n2 = m1[idx] * m1[idx] + m2[idx] * m2[idx] + m3[idx] * m3[idx];
    if (!(n2 > 1e-300)) throw_degenerate(field.grid(), idx);
    const double inv = 1.0 / std::sqrt(n2);
    m1[idx] *= inv;
    m2[idx] *= inv;
    m3[idx] *= inv;
    const double dev = std::abs(
        std::sqrt(m1[idx] * m1[idx] + m2[idx] * m2[idx] + m3[idx] * m3[idx]) -
        1.0);
    worst = std::max(worst, dev);
  }
  return worst;
}

MagnetizationField project(const VectorField& field) {
  MagnetizationField out = field;
  project_in_place(out);
  return out;
}

double max_norm_deviation(const VectorField& field) {
  const int n = field.cells();
  const double* m1 = field.component(0);
  const double* m2 = field.component(1);
  const double* m3 = field.component(2);
  double worst = 0.0;
  for (int idx = 0; idx < n; ++idx) {
    const double len = std::sqrt(m1[idx] * m1[idx] + m2[idx] * m2[idx] +
                                 m3[idx] * m3[idx]);
    worst = std::max(worst, std::abs(len - 1.0));
  }
  return worst;
}

}  // namespace chiralmag
