#include "chiralmag/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace chiralmag {

double ghost_derivative(const GhostField& g, int c, int axis, int i, int j,
                        int k) {
  const GridSpec& gr = g.grid();
  const int n = gr.dim(axis);
  const double h = gr.spacing(axis);
  const int pos = (axis == 0) ? i : (axis == 1) ? j : k;

  auto value = [&](int p) {
    switch (axis) {
      case 0: return g.at(c, p, j, k);
      case 1: return g.at(c, i, p, k);
      default: return g.at(c, i, j, p);
    }
  };

  if (n == 1) return (value(1) - value(-1)) / (2.0 * h);
  if (pos == 0) return (value(0) - value(-1)) / h;
  if (pos == n - 1) return (value(n) - value(n - 1)) / h;
  return (value(pos + 1) - value(pos - 1)) / (2.0 * h);
}

namespace {

/// All nine first derivatives at one cell: d[axis][component].
inline void gradient_at(const GhostField& g, int i, int j, int k,
                        double d[3][3]) {
  for (int axis = 0; axis < 3; ++axis)
    for (int c = 0; c < 3; ++c) d[axis][c] = ghost_derivative(g, c, axis, i, j, k);
}

inline Vec3 curl_from_grad(const double d[3][3]) {
  return {d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]};
}

}  // namespace

void laplacian_into(const GhostField& g, VectorField& out) {
  const GridSpec& gr = g.grid();
  if (!out.grid().same_shape(gr)) out = VectorField(gr);
  const double ix2 = 1.0 / (gr.hx * gr.hx);
  const double iy2 = 1.0 / (gr.hy * gr.hy);
  const double iz2 = 1.0 / (gr.hz * gr.hz);
  for (int c = 0; c < 3; ++c) {
    double* dst = out.component(c);
    for (int k = 0; k < gr.nz; ++k)
      for (int j = 0; j < gr.ny; ++j)
        for (int i = 0; i < gr.nx; ++i) {
          const double u = g.at(c, i, j, k);
          dst[gr.index(i, j, k)] =
              (g.at(c, i - 1, j, k) - 2.0 * u + g.at(c, i + 1, j, k)) * ix2 +
              (g.at(c, i, j - 1, k) - 2.0 * u + g.at(c, i, j + 1, k)) * iy2 +
              (g.at(c, i, j, k - 1) - 2.0 * u + g.at(c, i, j, k + 1)) * iz2;
        }
  }
}

VectorField laplacian(const GhostField& g) {
  VectorField out(g.grid());
  laplacian_into(g, out);
  return out;
}

void curl_into(const GhostField& g, VectorField& out) {
  const GridSpec& gr = g.grid();
  if (!out.grid().same_shape(gr)) out = VectorField(gr);
  for (int k = 0; k < gr.nz; ++k)
    for (int j = 0; j < gr.ny; ++j)
      for (int i = 0; i < gr.nx; ++i) {
        double d[3][3];
        gradient_at(g, i, j, k, d);
        out.set_vec(gr.index(i, j, k), curl_from_grad(d));
      }
}

VectorField curl(const GhostField& g) {
  VectorField out(g.grid());
  curl_into(g, out);
  return out;
}

void exchange_dmi_into(const GhostField& g, double eps, double kappa,
                       VectorField& out) {
  const GridSpec& gr = g.grid();
  if (!out.grid().same_shape(gr)) out = VectorField(gr);
  const double ix2 = 1.0 / (gr.hx * gr.hx);
  const double iy2 = 1.0 / (gr.hy * gr.hy);
  const double iz2 = 1.0 / (gr.hz * gr.hz);
  for (int k = 0; k < gr.nz; ++k)
    for (int j = 0; j < gr.ny; ++j)
      for (int i = 0; i < gr.nx; ++i) {
        double d[3][3];
        gradient_at(g, i, j, k, d);
        const Vec3 cu = curl_from_grad(d);
        const int idx = gr.index(i, j, k);
        for (int c = 0; c < 3; ++c) {
          const double u = g.at(c, i, j, k);
          const double lap =
              (g.at(c, i - 1, j, k) - 2.0 * u + g.at(c, i + 1, j, k)) * ix2 +
              (g.at(c, i, j - 1, k) - 2.0 * u + g.at(c, i, j + 1, k)) * iy2 +
              (g.at(c, i, j, k - 1) - 2.0 * u + g.at(c, i, j, k + 1)) * iz2;
          out.at(c, idx) = eps * lap - kappa * cu[c];
        }
      }
}

namespace {

/// Shared energy/density kernel; accumulates the non-DMI and DMI densities.
template <class Sink>
void energy_densities(const VectorField& m, const DimensionlessParams& params,
                      const DriveSpec& drive, Sink&& sink) {
  const GridSpec& gr = m.grid();
  GhostField g = fill_ghosts(m, params);
  const Vec3 he = drive.uniform_h;
  for (int k = 0; k < gr.nz; ++k)
    for (int j = 0; j < gr.ny; ++j)
      for (int i = 0; i < gr.nx; ++i) {
        double d[3][3];
        gradient_at(g, i, j, k, d);
        double grad2 = 0.0;
        for (int a = 0; a < 3; ++a)
          for (int c = 0; c < 3; ++c) grad2 += d[a][c] * d[a][c];
        const Vec3 mm = m.vec(i, j, k);
        const Vec3 cu = curl_from_grad(d);
        const double non_dmi = 0.5 * params.eps * grad2 - dot(he, mm) +
                               0.5 * params.q * (mm.y * mm.y + mm.z * mm.z);
        const double dmi = 0.5 * params.kappa * dot(cu, mm);
        sink(gr.index(i, j, k), non_dmi, dmi);
      }
}

}  // namespace

double energy(const VectorField& m, const DimensionlessParams& params,
              const DriveSpec& drive) {
  double total = 0.0;
  energy_densities(m, params, drive,
                   [&](int, double a, double b) { total += a + b; });
  return total * m.grid().cell_volume();
}

double energy(const VectorField& m, const DimensionlessParams& params) {
  return energy(m, params, zero_drive());
}

EnergyDensityMaps energy_density_maps(const VectorField& m,
                                      const DimensionlessParams& params,
                                      const DriveSpec& drive) {
  EnergyDensityMaps maps{ScalarField(m.grid()), ScalarField(m.grid()),
                         ScalarField(m.grid())};
  energy_densities(m, params, drive, [&](int idx, double a, double b) {
    maps.non_dmi.at(idx) = a;
    maps.dmi.at(idx) = b;
    maps.total.at(idx) = a + b;
  });
  return maps;
}

EnergyDensityMaps energy_density_maps(const VectorField& m,
                                      const DimensionlessParams& params) {
  return energy_density_maps(m, params, zero_drive());
}

double skyrmion_number(const VectorField& m, int z_layer) {
  const GridSpec& gr = m.grid();
  if (z_layer < 0 || z_layer >= gr.nz)
    throw std::invalid_argument("skyrmion_number: z layer out of range");

  // In-slice derivative from interior values only; zero for a single cell.
  auto deriv = [&](int c, int axis, int i, int j) -> double {
    const int n = axis == 0 ? gr.nx : gr.ny;
    if (n == 1) return 0.0;
    const double h = axis == 0 ? gr.hx : gr.hy;
    const int pos = axis == 0 ? i : j;
    auto val = [&](int p) {
      return axis == 0 ? m.at(c, p, j, z_layer) : m.at(c, i, p, z_layer);
    };
    if (pos == 0) return (val(1) - val(0)) / h;
    if (pos == n - 1) return (val(n - 1) - val(n - 2)) / h;
    return (val(pos + 1) - val(pos - 1)) / (2.0 * h);
  };

  double sum = 0.0;
  for (int j = 0; j < gr.ny; ++j)
    for (int i = 0; i < gr.nx; ++i) {
      const Vec3 dx{deriv(0, 0, i, j), deriv(1, 0, i, j), deriv(2, 0, i, j)};
      const Vec3 dy{deriv(0, 1, i, j), deriv(1, 1, i, j), deriv(2, 1, i, j)};
      sum += dot(m.vec(i, j, z_layer), cross(dx, dy));
    }
  return sum * gr.hx * gr.hy / (4.0 * M_PI);
}

double skyrmion_number(const VectorField& m) {
  return skyrmion_number(m, m.grid().nz / 2);
}

Vec3 spatial_average(const VectorField& m) {
  const int n = m.cells();
  Vec3 avg;
  for (int c = 0; c < 3; ++c) {
    const double* p = m.component(c);
    double s = 0.0;
    for (int idx = 0; idx < n; ++idx) s += p[idx];
    avg[c] = s / n;
  }
  return avg;
}

}  // namespace chiralmag
