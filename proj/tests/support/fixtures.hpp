#pragma once

// Shared fixtures for the test suites: the 80 nm FeGe reference sample,
// analytic textures, deterministic random fields, and independently written
// reference implementations used as oracles.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "chiralmag/boundary.hpp"
#include "chiralmag/drive.hpp"
#include "chiralmag/field.hpp"
#include "chiralmag/grid.hpp"
#include "chiralmag/material.hpp"
#include "chiralmag/operators.hpp"
#include "chiralmag/rng.hpp"
#include "chiralmag/stepper.hpp"

namespace testsupport {

using namespace chiralmag;

// 80 nm cubic FeGe sample used throughout; alpha is the only free knob.
inline PhysicalParams fege80(double alpha) {
  PhysicalParams p;
  p.exchange_A = 8.78e-12;
  p.dmi_D = 1.58e-3;
  p.Ms = 3.84e5;
  p.Ku = 0.0;
  p.length_L = 80e-9;
  p.alpha = alpha;
  return p;
}

// Thin-film grid with 2 nm cells, lengths in units of L = L_nm.
inline GridSpec film_grid(int nx, int ny, int nz, double L_nm = 80.0) {
  GridSpec g;
  g.nx = nx;
  g.ny = ny;
  g.nz = nz;
  g.hx = g.hy = g.hz = 2.0 / L_nm;
  g.length_scale_m = L_nm * 1e-9;
  return g;
}

inline GridSpec fege_grid() { return film_grid(40, 40, 3); }

// Axisymmetric Bloch texture. theta(r) ramps 0 -> pi over [0, R1] and, when
// R2 > R1, continues pi -> 2 pi over [R1, R2]; constant beyond. chir sets the
// in-plane winding sense. R1 = R2 = 0 gives the uniform +e3 state.
inline MagnetizationField bloch_texture(const GridSpec& g, double R1,
                                        double R2, double chir) {
  MagnetizationField m(g);
  const double cx = 0.5 * g.nx * g.hx;
  const double cy = 0.5 * g.ny * g.hy;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double x = (i + 0.5) * g.hx - cx;
        const double y = (j + 0.5) * g.hy - cy;
        const double r = std::sqrt(x * x + y * y);
        double theta = 0.0;
        if (R2 > R1 && R1 > 0.0) {
          if (r < R1)
            theta = M_PI * r / R1;
          else if (r < R2)
            theta = M_PI * (1.0 + (r - R1) / (R2 - R1));
          else
            theta = 2.0 * M_PI;
        } else if (R1 > 0.0) {
          theta = M_PI * std::min(r / R1, 1.0);
        }
        const double phi = std::atan2(y, x);
        const double st = std::sin(theta);
        m.set_vec(m.index(i, j, k),
                  Vec3{-chir * st * std::sin(phi), chir * st * std::cos(phi),
                       std::cos(theta)});
      }
  return project(m);
}

inline MagnetizationField bloch_skyrmion(const GridSpec& g, double R,
                                         double chir = -1.0) {
  return bloch_texture(g, R, 0.0, chir);
}

inline MagnetizationField bloch_skyrmionium(const GridSpec& g, double R1,
                                            double R2, double chir = -1.0) {
  return bloch_texture(g, R1, R2, chir);
}

// Deterministic unit-norm random field keyed by cell index.
inline MagnetizationField random_unit_field(const GridSpec& g,
                                            std::uint64_t seed,
                                            std::uint64_t stream = 900) {
  MagnetizationField m(g);
  for (int idx = 0; idx < m.cells(); ++idx)
    m.set_vec(idx, unit_sphere_sample(seed, stream,
                                      static_cast<std::uint64_t>(idx)));
  return m;
}

// Reference energy: same stencils as the library but an independently
// written walk (reversed loop nest, per-term accumulators) so assembly or
// quadrature mistakes in either side show up as a mismatch.
inline double energy_reference(const MagnetizationField& m,
                               const DimensionlessParams& p,
                               const DriveSpec& drive) {
  const GridSpec& gr = m.grid();
  GhostField g = fill_ghosts(m, p);

  auto diff = [&](int c, int axis, int i, int j, int k) -> double {
    const int n = gr.dim(axis);
    const double h = gr.spacing(axis);
    const int pos = axis == 0 ? i : axis == 1 ? j : k;
    auto at = [&](int q) {
      return axis == 0 ? g.at(c, q, j, k)
             : axis == 1 ? g.at(c, i, q, k)
                         : g.at(c, i, j, q);
    };
    if (n == 1) return (at(1) - at(-1)) / (2.0 * h);
    if (pos == 0) return (at(0) - at(-1)) / h;
    if (pos == n - 1) return (at(n) - at(n - 1)) / h;
    return (at(pos + 1) - at(pos - 1)) / (2.0 * h);
  };

  double ex = 0.0, dm = 0.0, ze = 0.0, an = 0.0;
  for (int i = 0; i < gr.nx; ++i)
    for (int j = 0; j < gr.ny; ++j)
      for (int k = 0; k < gr.nz; ++k) {
        double d[3][3];
        for (int axis = 0; axis < 3; ++axis)
          for (int c = 0; c < 3; ++c) d[axis][c] = diff(c, axis, i, j, k);
        for (int axis = 0; axis < 3; ++axis)
          for (int c = 0; c < 3; ++c) ex += d[axis][c] * d[axis][c];
        const Vec3 mm = m.vec(i, j, k);
        dm += (d[1][2] - d[2][1]) * mm.x + (d[2][0] - d[0][2]) * mm.y +
              (d[0][1] - d[1][0]) * mm.z;
        ze += dot(drive.uniform_h, mm);
        an += mm.y * mm.y + mm.z * mm.z;
      }
  return (0.5 * p.eps * ex + 0.5 * p.kappa * dm - ze + 0.5 * p.q * an) *
         gr.cell_volume();
}

// Dense matrix of the implicit-step operator, assembled by probing the
// coordinate basis. Row-major, size (3 n) x (3 n).
inline std::vector<double> dense_operator(const MagnetizationField& m_hat,
                                          const DimensionlessParams& p,
                                          double dt_tau, Dynamics dyn,
                                          int bdf_order) {
  const int n = 3 * m_hat.cells();
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  VectorField e(m_hat.grid());
  VectorField col(m_hat.grid());
  GhostField scratch(m_hat.grid());
  for (int jcol = 0; jcol < n; ++jcol) {
    e.fill(0.0);
    e.raw()[jcol] = 1.0;
    apply_operator(e, m_hat, p, dt_tau, dyn, bdf_order, col, scratch);
    for (int irow = 0; irow < n; ++irow)
      a[static_cast<std::size_t>(irow) * n + jcol] = col.raw()[irow];
  }
  return a;
}

inline std::vector<double> dense_apply(const std::vector<double>& a,
                                       const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> y(x.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a[static_cast<std::size_t>(i) * n + j] * x[j];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

// Classic fixed-step RK4 for a single moment; rhs maps (m, tau) -> dm/dtau.
inline Vec3 rk4_integrate(Vec3 m, double tau_end, int steps,
                          const std::function<Vec3(const Vec3&, double)>& rhs) {
  const double h = tau_end / steps;
  double t = 0.0;
  for (int s = 0; s < steps; ++s) {
    const Vec3 k1 = rhs(m, t);
    const Vec3 k2 = rhs(m + 0.5 * h * k1, t + 0.5 * h);
    const Vec3 k3 = rhs(m + 0.5 * h * k2, t + 0.5 * h);
    const Vec3 k4 = rhs(m + h * k3, t + h);
    m = m + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
  }
  return m;
}

inline double max_abs_diff(const VectorField& a, const VectorField& b) {
  double worst = 0.0;
  for (int i = 0; i < 3 * a.cells(); ++i)
    worst = std::max(worst, std::abs(a.raw()[i] - b.raw()[i]));
  return worst;
}

// --- filesystem helpers -----------------------------------------------------

inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "chiralmag_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

inline bool same_bytes(const std::filesystem::path& a,
                       const std::filesystem::path& b) {
  return read_file(a) == read_file(b);
}

// --- subprocess helper (used where a CLI binary path macro is defined) ------

struct CliResult {
  int status = -1;
  std::string output;
};

inline CliResult run_command(const std::string& cmd) {
  CliResult r;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + cmd);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.output += buf;
  const int rc = pclose(pipe);
  r.status = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
  return r;
}

}  // namespace testsupport
