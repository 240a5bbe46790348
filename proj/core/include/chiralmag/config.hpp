#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "chiralmag/drive.hpp"
#include "chiralmag/grid.hpp"
#include "chiralmag/krylov.hpp"
#include "chiralmag/material.hpp"
#include "chiralmag/stepper.hpp"

namespace chiralmag {

/// Scenario files are JSON with units spelled out in the key names
/// (size_nm, dt_ps, amplitude_T, u_m_per_s, ...). Unknown keys are rejected
/// so typos fail loudly instead of silently taking defaults.
///
/// Block reference (all lengths nm, times ps, fields tesla):
///
///   geometry   size_nm [3], cell_nm [3]; cells must tile the sample exactly
///   material   exchange_J_per_m, dmi_J_per_m2, Ms_A_per_m, Ku_J_per_m3,
///              length_scale_nm, gamma_per_s_T (optional)
///   dynamics   kind ("llg" | "heat_flow"), alpha, dt_ps, max_steps,
///              stop_at_steady, steady_rel_tol, steady_abs_tol
///   solver     tol, max_iterations, restart
///   drive      uniform_field_T [3], local_fields [], currents []
///   initializer  kind ("uniform" | "blocks" | "random_circle" | "file"), ...
///   string     images, tol, max_iterations, dt_ps, inner_steps,
///              endpoint_a {initializer..., relax}, endpoint_b {...}
///   output     directory, trace_stride, snapshot_stride, checkpoint_stride,
///              write_vtk
///   seed       integer, default 0
///
/// Which blocks are required depends on the run mode; the runner reports
/// missing ones by name.

struct GeometryConfig {
  Vec3 size_nm;
  Vec3 cell_nm;
};

struct InitializerConfig {
  enum class Kind { uniform, blocks, random_circle, file };
  Kind kind = Kind::uniform;

  Vec3 direction{0.0, 0.0, 1.0};  // uniform

  int rows = 0, cols = 0;  // blocks: cols along x, rows along y
  double block_nm = 0.0;
  double spacing_nm = 0.0;

  double radius_nm = 0.0;  // random_circle
  Vec3 center_nm;          // in-plane circle center; valid when center_given
  bool center_given = false;
  std::shared_ptr<InitializerConfig> base;  // state outside the circle

  std::string path;  // file
};

struct DynamicsConfig {
  Dynamics kind = Dynamics::landau_lifshitz;
  bool kind_given = false;
  double alpha = 0.0;
  double dt_ps = 0.0;
  long long max_steps = 0;
  bool stop_at_steady = false;
  bool stop_given = false;
  double steady_rel_tol = 1e-9;
  double steady_abs_tol = 1e-18;
};

struct LocalFieldConfig {
  Vec3 amplitude_T;
  Vec3 center_nm;
  Vec3 half_width_nm;
  Vec3 velocity_m_per_s;
  double on_ps = 0.0;
  double off_ps = 0.0;
};

struct CurrentConfig {
  double u_m_per_s = 0.0;
  Vec3 direction{1.0, 0.0, 0.0};
  double xi = 0.0;
  double on_ps = 0.0;
  double off_ps = 0.0;
};

struct DriveConfig {
  Vec3 uniform_field_T{0.0, 0.0, 0.0};
  std::vector<LocalFieldConfig> local_fields;
  std::vector<CurrentConfig> currents;
};

struct StringEndpointConfig {
  InitializerConfig init;
  bool relax = false;  // heat-flow the endpoint to steady state first
};

struct StringConfig {
  int images = 21;  // total image count including both endpoints
  double tol = 1e-6;
  long long max_iterations = 50000;
  double dt_ps = 1.0;
  int inner_steps = 1;
  StringEndpointConfig endpoint_a, endpoint_b;
};

struct OutputConfig {
  std::string directory = "out";
  long long trace_stride = 1;
  long long snapshot_stride = 0;     // 0: final snapshot only
  long long checkpoint_stride = 0;   // 0: no checkpoints
  bool write_vtk = false;
};

struct ScenarioConfig {
  bool has_geometry = false;
  bool has_material = false;
  bool has_initializer = false;
  bool has_dynamics = false;
  bool has_string = false;

  GeometryConfig geometry;
  PhysicalParams material;  // alpha comes from the dynamics block
  InitializerConfig initializer;
  DynamicsConfig dynamics;
  KrylovConfig solver;
  DriveConfig drive;
  StringConfig string_cfg;
  OutputConfig output;
  std::uint64_t seed = 0;

  /// FNV-1a of the canonically re-serialized document (keys sorted), so
  /// formatting changes do not invalidate checkpoints but value changes do.
  std::uint64_t config_hash = 0;

  GridSpec make_grid() const;    // requires geometry + material
  DriveSpec make_drive() const;  // requires material
};

/// Parse and validate a scenario document. Throws ConfigError with the
/// offending key path in the message.
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::string& path);

}  // namespace chiralmag
