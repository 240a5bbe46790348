#include "chiralmag/initializers.hpp"

#include <stdexcept>
#include <string>

#include "chiralmag/errors.hpp"
#include "chiralmag/rng.hpp"
#include "chiralmag/snapshot_io.hpp"

namespace chiralmag {

namespace {

constexpr double kEdgeSlackNm = 1e-6;
constexpr std::uint32_t kCircleStream = 0;

double cell_center_nm(const GridSpec& g, int axis, int pos) {
  return (pos + 0.5) * g.spacing(axis) * g.length_scale_m * 1e9;
}

double sample_extent_nm(const GridSpec& g, int axis) {
  return g.dim(axis) * g.spacing(axis) * g.length_scale_m * 1e9;
}

}  // namespace

MagnetizationField init_blocks(const GridSpec& grid, double block_nm,
                               double spacing_nm, int rows, int cols) {
  MagnetizationField m = new_uniform(grid, {0.0, 0.0, 1.0});
  if (rows <= 0 || cols <= 0) return m;
  if (!(block_nm > 0.0)) throw std::invalid_argument("block size must be > 0");
  if (spacing_nm < 0.0) throw std::invalid_argument("block spacing must be >= 0");

  const double size_x = sample_extent_nm(grid, 0);
  const double size_y = sample_extent_nm(grid, 1);
  const double extent_x = cols * block_nm + (cols - 1) * spacing_nm;
  const double extent_y = rows * block_nm + (rows - 1) * spacing_nm;
  if (extent_x > size_x + kEdgeSlackNm || extent_y > size_y + kEdgeSlackNm)
    throw std::invalid_argument("block layout " + std::to_string(cols) + "x" +
                                std::to_string(rows) +
                                " does not fit the sample");

  const double x0 = 0.5 * (size_x - extent_x);
  const double y0 = 0.5 * (size_y - extent_y);
  const double pitch = block_nm + spacing_nm;

  for (int j = 0; j < grid.ny; ++j) {
    const double yc = cell_center_nm(grid, 1, j);
    bool in_y = false;
    for (int r = 0; r < rows && !in_y; ++r) {
      const double lo = y0 + r * pitch;
      in_y = yc >= lo - kEdgeSlackNm && yc <= lo + block_nm + kEdgeSlackNm;
    }
    if (!in_y) continue;
    for (int i = 0; i < grid.nx; ++i) {
      const double xc = cell_center_nm(grid, 0, i);
      bool in_x = false;
      for (int c = 0; c < cols && !in_x; ++c) {
        const double lo = x0 + c * pitch;
        in_x = xc >= lo - kEdgeSlackNm && xc <= lo + block_nm + kEdgeSlackNm;
      }
      if (!in_x) continue;
      for (int k = 0; k < grid.nz; ++k)
        m.set_vec(grid.index(i, j, k), {0.0, 0.0, -1.0});
    }
  }
  return m;
}

MagnetizationField init_random_circle(const MagnetizationField& base,
                                      double cx_nm, double cy_nm,
                                      double radius_nm, std::uint64_t seed) {
  if (radius_nm < 0.0) throw std::invalid_argument("circle radius must be >= 0");
  MagnetizationField m = base;
  if (radius_nm == 0.0) return m;
  const GridSpec& g = base.grid();
  const double r = radius_nm + kEdgeSlackNm;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j) {
      const double dy = cell_center_nm(g, 1, j) - cy_nm;
      for (int i = 0; i < g.nx; ++i) {
        const double dx = cell_center_nm(g, 0, i) - cx_nm;
        if (dx * dx + dy * dy > r * r) continue;
        const int idx = g.index(i, j, k);
        m.set_vec(idx, unit_sphere_sample(seed, kCircleStream,
                                          static_cast<std::uint64_t>(idx)));
      }
    }
  return m;
}

MagnetizationField build_initial_state(const InitializerConfig& cfg,
                                       const GridSpec& grid,
                                       std::uint64_t seed) {
  switch (cfg.kind) {
    case InitializerConfig::Kind::uniform:
      return new_uniform(grid, cfg.direction);
    case InitializerConfig::Kind::blocks:
      try {
        return init_blocks(grid, cfg.block_nm, cfg.spacing_nm, cfg.rows,
                           cfg.cols);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("initializer: ") + e.what());
      }
    case InitializerConfig::Kind::random_circle: {
      MagnetizationField base =
          cfg.base ? build_initial_state(*cfg.base, grid, seed)
                   : new_uniform(grid, {0.0, 0.0, 1.0});
      double cx = 0.5 * sample_extent_nm(grid, 0);
      double cy = 0.5 * sample_extent_nm(grid, 1);
      if (cfg.center_given) {
        cx = cfg.center_nm.x;
        cy = cfg.center_nm.y;
      }
      return init_random_circle(base, cx, cy, cfg.radius_nm, seed);
    }
    case InitializerConfig::Kind::file: {
      MagnetizationField m;
      try {
        m = read_snapshot(cfg.path);
      } catch (const std::exception& e) {
        throw ConfigError(std::string("initializer: ") + e.what());
      }
      if (!m.grid().same_shape(grid))
        throw ConfigError("initializer: snapshot grid in " + cfg.path +
                          " does not match the scenario geometry");
      if (max_norm_deviation(m) > 1e-8)
        throw ConfigError("initializer: " + cfg.path +
                          " is not a unit magnetization field");
      return m;
    }
  }
  throw ConfigError("initializer: unknown kind");
}

}  // namespace chiralmag
