#include "chiralmag/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

#include "chiralmag/checkpoint.hpp"
#include "chiralmag/errors.hpp"

namespace chiralmag {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
}

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) fail(where, "unknown key '" + it.key() + "'");
  }
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

long long as_integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long long>();
}

bool as_bool(const json& j, const std::string& where) {
  if (!j.is_boolean()) fail(where, "expected true or false");
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

Vec3 as_vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3)
    fail(where, "expected an array of 3 numbers");
  return {as_number(j[0], where), as_number(j[1], where),
          as_number(j[2], where)};
}

GeometryConfig parse_geometry(const json& j) {
  require_object(j, "geometry");
  check_keys(j, "geometry", {"size_nm", "cell_nm"});
  if (!j.contains("size_nm")) fail("geometry.size_nm", "missing");
  if (!j.contains("cell_nm")) fail("geometry.cell_nm", "missing");
  GeometryConfig g;
  g.size_nm = as_vec3(j["size_nm"], "geometry.size_nm");
  g.cell_nm = as_vec3(j["cell_nm"], "geometry.cell_nm");
  for (int a = 0; a < 3; ++a) {
    if (!(g.size_nm[a] > 0.0)) fail("geometry.size_nm", "entries must be > 0");
    if (!(g.cell_nm[a] > 0.0)) fail("geometry.cell_nm", "entries must be > 0");
  }
  return g;
}

PhysicalParams parse_material(const json& j) {
  require_object(j, "material");
  check_keys(j, "material",
             {"exchange_J_per_m", "dmi_J_per_m2", "Ms_A_per_m", "Ku_J_per_m3",
              "length_scale_nm", "gamma_per_s_T"});
  PhysicalParams p;
  for (const char* key :
       {"exchange_J_per_m", "dmi_J_per_m2", "Ms_A_per_m", "length_scale_nm"})
    if (!j.contains(key)) fail(std::string("material.") + key, "missing");
  p.exchange_A = as_number(j["exchange_J_per_m"], "material.exchange_J_per_m");
  p.dmi_D = as_number(j["dmi_J_per_m2"], "material.dmi_J_per_m2");
  p.Ms = as_number(j["Ms_A_per_m"], "material.Ms_A_per_m");
  if (j.contains("Ku_J_per_m3"))
    p.Ku = as_number(j["Ku_J_per_m3"], "material.Ku_J_per_m3");
  const double L_nm =
      as_number(j["length_scale_nm"], "material.length_scale_nm");
  if (!(L_nm > 0.0)) fail("material.length_scale_nm", "must be > 0");
  p.length_L = L_nm * 1e-9;
  if (j.contains("gamma_per_s_T")) {
    p.gamma = as_number(j["gamma_per_s_T"], "material.gamma_per_s_T");
    if (!(p.gamma > 0.0)) fail("material.gamma_per_s_T", "must be > 0");
  }
  if (!(p.exchange_A > 0.0)) fail("material.exchange_J_per_m", "must be > 0");
  if (!(p.Ms > 0.0)) fail("material.Ms_A_per_m", "must be > 0");
  if (p.Ku < 0.0) fail("material.Ku_J_per_m3", "must be >= 0");
  return p;
}

InitializerConfig parse_initializer(const json& j, const std::string& where,
                                    bool allow_circle = true);

InitializerConfig parse_initializer_fields(const json& j,
                                           const std::string& where,
                                           bool allow_circle) {
  if (!j.contains("kind")) fail(where + ".kind", "missing");
  const std::string kind = as_string(j["kind"], where + ".kind");
  InitializerConfig c;
  if (kind == "uniform") {
    c.kind = InitializerConfig::Kind::uniform;
    if (j.contains("direction")) {
      c.direction = as_vec3(j["direction"], where + ".direction");
      if (norm(c.direction) == 0.0)
        fail(where + ".direction", "must be nonzero");
    }
  } else if (kind == "blocks") {
    c.kind = InitializerConfig::Kind::blocks;
    for (const char* key : {"rows", "cols"})
      if (!j.contains(key)) fail(where + "." + key, "missing");
    c.rows = static_cast<int>(as_integer(j["rows"], where + ".rows"));
    c.cols = static_cast<int>(as_integer(j["cols"], where + ".cols"));
    if (c.rows < 0) fail(where + ".rows", "must be >= 0");
    if (c.cols < 0) fail(where + ".cols", "must be >= 0");
    if (c.rows > 0 && c.cols > 0) {
      if (!j.contains("block_nm")) fail(where + ".block_nm", "missing");
      c.block_nm = as_number(j["block_nm"], where + ".block_nm");
      if (!(c.block_nm > 0.0)) fail(where + ".block_nm", "must be > 0");
    }
    if (j.contains("spacing_nm")) {
      c.spacing_nm = as_number(j["spacing_nm"], where + ".spacing_nm");
      if (c.spacing_nm < 0.0) fail(where + ".spacing_nm", "must be >= 0");
    }
  } else if (kind == "random_circle") {
    if (!allow_circle)
      fail(where, "random_circle cannot be nested inside random_circle");
    c.kind = InitializerConfig::Kind::random_circle;
    if (!j.contains("radius_nm")) fail(where + ".radius_nm", "missing");
    c.radius_nm = as_number(j["radius_nm"], where + ".radius_nm");
    if (c.radius_nm < 0.0) fail(where + ".radius_nm", "must be >= 0");
    if (j.contains("center_nm")) {
      const json& cj = j["center_nm"];
      if (!cj.is_array() || cj.size() != 2)
        fail(where + ".center_nm", "expected an array of 2 numbers (x, y)");
      c.center_nm = {as_number(cj[0], where + ".center_nm"),
                     as_number(cj[1], where + ".center_nm"), 0.0};
      c.center_given = true;
    }
    if (j.contains("base")) {
      require_object(j["base"], where + ".base");
      c.base = std::make_shared<InitializerConfig>(
          parse_initializer(j["base"], where + ".base", false));
    }
  } else if (kind == "file") {
    c.kind = InitializerConfig::Kind::file;
    if (!j.contains("path")) fail(where + ".path", "missing");
    c.path = as_string(j["path"], where + ".path");
    if (c.path.empty()) fail(where + ".path", "must be nonempty");
  } else {
    fail(where + ".kind",
         "unknown kind '" + kind +
             "' (expected uniform, blocks, random_circle, or file)");
  }
  return c;
}

InitializerConfig parse_initializer(const json& j, const std::string& where,
                                    bool allow_circle) {
  require_object(j, where);
  check_keys(j, where,
             {"kind", "direction", "rows", "cols", "block_nm", "spacing_nm",
              "radius_nm", "center_nm", "base", "path"});
  return parse_initializer_fields(j, where, allow_circle);
}

DynamicsConfig parse_dynamics(const json& j) {
  require_object(j, "dynamics");
  check_keys(j, "dynamics",
             {"kind", "alpha", "dt_ps", "max_steps", "stop_at_steady",
              "steady_rel_tol", "steady_abs_tol"});
  DynamicsConfig d;
  if (j.contains("kind")) {
    const std::string kind = as_string(j["kind"], "dynamics.kind");
    if (kind == "llg")
      d.kind = Dynamics::landau_lifshitz;
    else if (kind == "heat_flow")
      d.kind = Dynamics::heat_flow;
    else
      fail("dynamics.kind",
           "unknown kind '" + kind + "' (expected llg or heat_flow)");
    d.kind_given = true;
  }
  if (j.contains("alpha")) {
    d.alpha = as_number(j["alpha"], "dynamics.alpha");
    if (d.alpha < 0.0 || d.alpha > 1.0)
      fail("dynamics.alpha", "must lie in [0, 1]");
  }
  if (!j.contains("dt_ps")) fail("dynamics.dt_ps", "missing");
  d.dt_ps = as_number(j["dt_ps"], "dynamics.dt_ps");
  if (!(d.dt_ps > 0.0)) fail("dynamics.dt_ps", "must be > 0");
  if (!j.contains("max_steps")) fail("dynamics.max_steps", "missing");
  d.max_steps = as_integer(j["max_steps"], "dynamics.max_steps");
  if (d.max_steps < 1) fail("dynamics.max_steps", "must be >= 1");
  if (j.contains("stop_at_steady")) {
    d.stop_at_steady = as_bool(j["stop_at_steady"], "dynamics.stop_at_steady");
    d.stop_given = true;
  }
  if (j.contains("steady_rel_tol")) {
    d.steady_rel_tol = as_number(j["steady_rel_tol"], "dynamics.steady_rel_tol");
    if (!(d.steady_rel_tol > 0.0)) fail("dynamics.steady_rel_tol", "must be > 0");
  }
  if (j.contains("steady_abs_tol")) {
    d.steady_abs_tol = as_number(j["steady_abs_tol"], "dynamics.steady_abs_tol");
    if (!(d.steady_abs_tol > 0.0)) fail("dynamics.steady_abs_tol", "must be > 0");
  }
  return d;
}

KrylovConfig parse_solver(const json& j) {
  require_object(j, "solver");
  check_keys(j, "solver", {"tol", "max_iterations", "restart"});
  KrylovConfig k;
  if (j.contains("tol")) {
    k.tol = as_number(j["tol"], "solver.tol");
    if (!(k.tol > 0.0)) fail("solver.tol", "must be > 0");
  }
  if (j.contains("max_iterations")) {
    k.max_iters =
        static_cast<int>(as_integer(j["max_iterations"], "solver.max_iterations"));
    if (k.max_iters < 1) fail("solver.max_iterations", "must be >= 1");
  }
  if (j.contains("restart")) {
    k.restart = static_cast<int>(as_integer(j["restart"], "solver.restart"));
    if (k.restart < 1) fail("solver.restart", "must be >= 1");
  }
  return k;
}

LocalFieldConfig parse_local_field(const json& j, const std::string& where) {
  require_object(j, where);
  check_keys(j, where,
             {"amplitude_T", "center_nm", "half_width_nm", "velocity_m_per_s",
              "window_ps"});
  for (const char* key : {"amplitude_T", "center_nm", "half_width_nm"})
    if (!j.contains(key)) fail(where + "." + key, "missing");
  LocalFieldConfig f;
  f.amplitude_T = as_vec3(j["amplitude_T"], where + ".amplitude_T");
  f.center_nm = as_vec3(j["center_nm"], where + ".center_nm");
  f.half_width_nm = as_vec3(j["half_width_nm"], where + ".half_width_nm");
  for (int a = 0; a < 3; ++a)
    if (!(f.half_width_nm[a] > 0.0))
      fail(where + ".half_width_nm", "entries must be > 0");
  if (j.contains("velocity_m_per_s"))
    f.velocity_m_per_s =
        as_vec3(j["velocity_m_per_s"], where + ".velocity_m_per_s");
  if (!j.contains("window_ps")) fail(where + ".window_ps", "missing");
  const json& w = j["window_ps"];
  if (!w.is_array() || w.size() != 2)
    fail(where + ".window_ps", "expected [on_ps, off_ps]");
  f.on_ps = as_number(w[0], where + ".window_ps");
  f.off_ps = as_number(w[1], where + ".window_ps");
  if (f.off_ps < f.on_ps) fail(where + ".window_ps", "off must be >= on");
  return f;
}

CurrentConfig parse_current(const json& j, const std::string& where) {
  require_object(j, where);
  check_keys(j, where, {"u_m_per_s", "direction", "xi", "window_ps"});
  for (const char* key : {"u_m_per_s", "direction", "window_ps"})
    if (!j.contains(key)) fail(where + "." + key, "missing");
  CurrentConfig c;
  c.u_m_per_s = as_number(j["u_m_per_s"], where + ".u_m_per_s");
  c.direction = as_vec3(j["direction"], where + ".direction");
  if (norm(c.direction) == 0.0) fail(where + ".direction", "must be nonzero");
  if (j.contains("xi")) c.xi = as_number(j["xi"], where + ".xi");
  const json& w = j["window_ps"];
  if (!w.is_array() || w.size() != 2)
    fail(where + ".window_ps", "expected [on_ps, off_ps]");
  c.on_ps = as_number(w[0], where + ".window_ps");
  c.off_ps = as_number(w[1], where + ".window_ps");
  if (c.off_ps < c.on_ps) fail(where + ".window_ps", "off must be >= on");
  return c;
}

DriveConfig parse_drive(const json& j) {
  require_object(j, "drive");
  check_keys(j, "drive", {"uniform_field_T", "local_fields", "currents"});
  DriveConfig d;
  if (j.contains("uniform_field_T"))
    d.uniform_field_T = as_vec3(j["uniform_field_T"], "drive.uniform_field_T");
  if (j.contains("local_fields")) {
    const json& arr = j["local_fields"];
    if (!arr.is_array()) fail("drive.local_fields", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i)
      d.local_fields.push_back(parse_local_field(
          arr[i], "drive.local_fields[" + std::to_string(i) + "]"));
  }
  if (j.contains("currents")) {
    const json& arr = j["currents"];
    if (!arr.is_array()) fail("drive.currents", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i)
      d.currents.push_back(
          parse_current(arr[i], "drive.currents[" + std::to_string(i) + "]"));
  }
  return d;
}

StringEndpointConfig parse_endpoint(const json& j, const std::string& where) {
  require_object(j, where);
  check_keys(j, where,
             {"kind", "direction", "rows", "cols", "block_nm", "spacing_nm",
              "radius_nm", "center_nm", "base", "path", "relax"});
  StringEndpointConfig e;
  e.init = parse_initializer_fields(j, where, true);
  if (j.contains("relax")) e.relax = as_bool(j["relax"], where + ".relax");
  return e;
}

StringConfig parse_string(const json& j) {
  require_object(j, "string");
  check_keys(j, "string",
             {"images", "tol", "max_iterations", "dt_ps", "inner_steps",
              "endpoint_a", "endpoint_b"});
  StringConfig s;
  if (j.contains("images")) {
    s.images = static_cast<int>(as_integer(j["images"], "string.images"));
    if (s.images < 2) fail("string.images", "must be >= 2");
  }
  if (j.contains("tol")) {
    s.tol = as_number(j["tol"], "string.tol");
    if (!(s.tol > 0.0)) fail("string.tol", "must be > 0");
  }
  if (j.contains("max_iterations")) {
    s.max_iterations = as_integer(j["max_iterations"], "string.max_iterations");
    if (s.max_iterations < 1) fail("string.max_iterations", "must be >= 1");
  }
  if (j.contains("dt_ps")) {
    s.dt_ps = as_number(j["dt_ps"], "string.dt_ps");
    if (!(s.dt_ps > 0.0)) fail("string.dt_ps", "must be > 0");
  }
  if (j.contains("inner_steps")) {
    s.inner_steps =
        static_cast<int>(as_integer(j["inner_steps"], "string.inner_steps"));
    if (s.inner_steps < 1) fail("string.inner_steps", "must be >= 1");
  }
  for (const char* key : {"endpoint_a", "endpoint_b"})
    if (!j.contains(key)) fail(std::string("string.") + key, "missing");
  s.endpoint_a = parse_endpoint(j["endpoint_a"], "string.endpoint_a");
  s.endpoint_b = parse_endpoint(j["endpoint_b"], "string.endpoint_b");
  return s;
}

OutputConfig parse_output(const json& j) {
  require_object(j, "output");
  check_keys(j, "output",
             {"directory", "trace_stride", "snapshot_stride",
              "checkpoint_stride", "write_vtk"});
  OutputConfig o;
  if (j.contains("directory")) {
    o.directory = as_string(j["directory"], "output.directory");
    if (o.directory.empty()) fail("output.directory", "must be nonempty");
  }
  if (j.contains("trace_stride")) {
    o.trace_stride = as_integer(j["trace_stride"], "output.trace_stride");
    if (o.trace_stride < 1) fail("output.trace_stride", "must be >= 1");
  }
  if (j.contains("snapshot_stride")) {
    o.snapshot_stride = as_integer(j["snapshot_stride"], "output.snapshot_stride");
    if (o.snapshot_stride < 0) fail("output.snapshot_stride", "must be >= 0");
  }
  if (j.contains("checkpoint_stride")) {
    o.checkpoint_stride =
        as_integer(j["checkpoint_stride"], "output.checkpoint_stride");
    if (o.checkpoint_stride < 0)
      fail("output.checkpoint_stride", "must be >= 0");
  }
  if (j.contains("write_vtk"))
    o.write_vtk = as_bool(j["write_vtk"], "output.write_vtk");
  return o;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: not valid JSON: ") + e.what());
  }
  require_object(doc, "config");
  check_keys(doc, "config",
             {"geometry", "material", "initializer", "dynamics", "solver",
              "drive", "string", "output", "seed"});

  ScenarioConfig cfg;
  if (doc.contains("geometry")) {
    cfg.geometry = parse_geometry(doc["geometry"]);
    cfg.has_geometry = true;
  }
  if (doc.contains("material")) {
    cfg.material = parse_material(doc["material"]);
    cfg.has_material = true;
  }
  if (doc.contains("initializer")) {
    cfg.initializer = parse_initializer(doc["initializer"], "initializer");
    cfg.has_initializer = true;
  }
  if (doc.contains("dynamics")) {
    cfg.dynamics = parse_dynamics(doc["dynamics"]);
    cfg.has_dynamics = true;
  }
  if (doc.contains("solver")) cfg.solver = parse_solver(doc["solver"]);
  if (doc.contains("drive")) cfg.drive = parse_drive(doc["drive"]);
  if (doc.contains("string")) {
    cfg.string_cfg = parse_string(doc["string"]);
    cfg.has_string = true;
  }
  if (doc.contains("output")) cfg.output = parse_output(doc["output"]);
  if (doc.contains("seed")) {
    const long long s = as_integer(doc["seed"], "seed");
    if (s < 0) fail("seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(s);
  }

  cfg.material.alpha = cfg.dynamics.alpha;
  if (cfg.has_material) {
    try {
      cfg.material.validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("material: ") + e.what());
    }
  }

  cfg.config_hash = fnv1a64(doc.dump());
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

GridSpec ScenarioConfig::make_grid() const {
  if (!has_geometry) throw ConfigError("geometry: block is required");
  if (!has_material) throw ConfigError("material: block is required");
  const double L_nm = material.length_L * 1e9;
  int n[3];
  double h[3];
  for (int a = 0; a < 3; ++a) {
    const double ratio = geometry.size_nm[a] / geometry.cell_nm[a];
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio)
      throw ConfigError(
          "geometry: cell_nm must tile size_nm exactly along axis " +
          std::string(1, "xyz"[a]));
    n[a] = static_cast<int>(rounded);
    h[a] = geometry.cell_nm[a] / L_nm;
  }
  GridSpec g;
  g.nx = n[0];
  g.ny = n[1];
  g.nz = n[2];
  g.hx = h[0];
  g.hy = h[1];
  g.hz = h[2];
  g.length_scale_m = material.length_L;
  g.validate();
  return g;
}

DriveSpec ScenarioConfig::make_drive() const {
  if (!has_material) throw ConfigError("material: block is required");
  DriveSpec d;
  d.scales = make_drive_scales(material);
  d.uniform_h = drive.uniform_field_T * d.scales.tesla_to_ms;
  const double nm_to_unit = 1e-9 / material.length_L;
  for (const LocalFieldConfig& f : drive.local_fields) {
    LocalFieldPulse p;
    p.amplitude_T = f.amplitude_T;
    p.center = f.center_nm * nm_to_unit;
    p.half_width = f.half_width_nm * nm_to_unit;
    p.velocity_m_s = f.velocity_m_per_s;
    p.on_ps = f.on_ps;
    p.off_ps = f.off_ps;
    d.local_fields.push_back(p);
  }
  for (const CurrentConfig& c : drive.currents) {
    SttPulse s;
    s.u_m_s = c.u_m_per_s;
    s.direction = c.direction * (1.0 / norm(c.direction));
    s.xi = c.xi;
    s.on_ps = c.on_ps;
    s.off_ps = c.off_ps;
    d.stt.push_back(s);
  }
  return d;
}

}  // namespace chiralmag
