#include "chiralmag/boundary.hpp"

namespace chiralmag {

GhostField::GhostField(const GridSpec& grid) : grid_(grid) {
  grid_.validate();
  comp_stride_ = static_cast<std::size_t>(grid.nx + 2) * (grid.ny + 2) *
                 (grid.nz + 2);
  data_.assign(3 * comp_stride_, 0.0);
}

namespace {

struct FaceRot {
  double c = 1.0, s = 0.0;  // cos/sin of the ghost rotation angle
};

FaceRot face_rotation(double kappa_b, double h) {
  const double k = kappa_b * h / 2.0;
  const double d = 1.0 + k * k;
  return {(1.0 - k * k) / d, 2.0 * k / d};
}

}  // namespace

void fill_ghosts_into(const VectorField& m, const DimensionlessParams& params,
                      GhostField& out) {
  const GridSpec& g = m.grid();
  if (!out.grid_.same_shape(g)) out = GhostField(g);

  const int nx = g.nx, ny = g.ny, nz = g.nz;
  out.kb_ = {params.kappa_b * g.hx / 2.0, params.kappa_b * g.hy / 2.0,
             params.kappa_b * g.hz / 2.0};

  // Interior copy.
  for (int c = 0; c < 3; ++c) {
    const double* src = m.component(c);
    for (int k = 0; k < nz; ++k)
      for (int j = 0; j < ny; ++j) {
        const double* row = src + (static_cast<std::size_t>(k) * ny + j) * nx;
        double* dst = out.data_.data() + out.pad_index(c, 0, j, k);
        for (int i = 0; i < nx; ++i) dst[i] = row[i];
      }
  }

  const FaceRot rx = face_rotation(params.kappa_b, g.hx);
  const FaceRot ry = face_rotation(params.kappa_b, g.hy);
  const FaceRot rz = face_rotation(params.kappa_b, g.hz);

  // x faces: m1 copied, (m2, m3) rotated.
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j) {
      {
        const Vec3 u = m.vec(nx - 1, j, k);
        out.at(0, nx, j, k) = u.x;
        out.at(1, nx, j, k) = rx.c * u.y - rx.s * u.z;
        out.at(2, nx, j, k) = rx.s * u.y + rx.c * u.z;
      }
      {
        const Vec3 u = m.vec(0, j, k);
        out.at(0, -1, j, k) = u.x;
        out.at(1, -1, j, k) = rx.c * u.y + rx.s * u.z;
        out.at(2, -1, j, k) = -rx.s * u.y + rx.c * u.z;
      }
    }

  // y faces: m2 copied, (m3, m1) rotated.
  for (int k = 0; k < nz; ++k)
    for (int i = 0; i < nx; ++i) {
      {
        const Vec3 u = m.vec(i, ny - 1, k);
        out.at(1, i, ny, k) = u.y;
        out.at(2, i, ny, k) = ry.c * u.z - ry.s * u.x;
        out.at(0, i, ny, k) = ry.s * u.z + ry.c * u.x;
      }
      {
        const Vec3 u = m.vec(i, 0, k);
        out.at(1, i, -1, k) = u.y;
        out.at(2, i, -1, k) = ry.c * u.z + ry.s * u.x;
        out.at(0, i, -1, k) = -ry.s * u.z + ry.c * u.x;
      }
    }

  // z faces: m3 copied, (m1, m2) rotated.
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      {
        const Vec3 u = m.vec(i, j, nz - 1);
        out.at(2, i, j, nz) = u.z;
        out.at(0, i, j, nz) = rz.c * u.x - rz.s * u.y;
        out.at(1, i, j, nz) = rz.s * u.x + rz.c * u.y;
      }
      {
        const Vec3 u = m.vec(i, j, 0);
        out.at(2, i, j, -1) = u.z;
        out.at(0, i, j, -1) = rz.c * u.x + rz.s * u.y;
        out.at(1, i, j, -1) = -rz.s * u.x + rz.c * u.y;
      }
    }
}

GhostField fill_ghosts(const VectorField& m,
                       const DimensionlessParams& params) {
  GhostField out(m.grid());
  fill_ghosts_into(m, params, out);
  return out;
}

}  // namespace chiralmag
