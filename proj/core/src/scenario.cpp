#include "chiralmag/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

#include "chiralmag/checkpoint.hpp"
#include "chiralmag/errors.hpp"
#include "chiralmag/initializers.hpp"
#include "chiralmag/operators.hpp"
#include "chiralmag/snapshot_io.hpp"
#include "chiralmag/string_method.hpp"
#include "chiralmag/trace.hpp"

namespace chiralmag {

namespace {

namespace fs = std::filesystem;

ScenarioConfig with_overrides(const ScenarioConfig& cfg,
                              const RunOverrides& ov) {
  ScenarioConfig out = cfg;
  if (!ov.output_dir.empty()) out.output.directory = ov.output_dir;
  if (ov.snapshot_stride >= 0) out.output.snapshot_stride = ov.snapshot_stride;
  if (ov.seed >= 0) out.seed = static_cast<std::uint64_t>(ov.seed);
  return out;
}

void require_block(bool present, const char* name) {
  if (!present)
    throw ConfigError(std::string(name) + ": block is required for this mode");
}

std::string zero_padded(long long v, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%0*lld", width, v);
  return buf;
}

void export_field(const fs::path& dir, const std::string& stem,
                  const VectorField& f, bool vtk) {
  write_snapshot((dir / (stem + ".snap")).string(), f);
  if (vtk) write_vtk((dir / (stem + ".vtk")).string(), f, "m");
}

void run_dynamics(const ScenarioConfig& cfg, RunMode mode,
                  const RunOverrides& ov) {
  require_block(cfg.has_geometry, "geometry");
  require_block(cfg.has_material, "material");
  require_block(cfg.has_initializer, "initializer");
  require_block(cfg.has_dynamics, "dynamics");

  Dynamics kind = Dynamics::heat_flow;
  if (mode == RunMode::relax) {
    if (cfg.dynamics.kind_given && cfg.dynamics.kind != Dynamics::heat_flow)
      throw ConfigError(
          "dynamics.kind: relax runs the heat flow; drop the key or set "
          "heat_flow");
  } else {
    kind = cfg.dynamics.kind_given ? cfg.dynamics.kind
                                   : Dynamics::landau_lifshitz;
  }
  const bool stop_at_steady = cfg.dynamics.stop_given
                                  ? cfg.dynamics.stop_at_steady
                                  : (mode == RunMode::relax);

  const GridSpec grid = cfg.make_grid();
  const DriveSpec drive = cfg.make_drive();
  MagnetizationField m0 = build_initial_state(cfg.initializer, grid, cfg.seed);
  Integrator integ(cfg.material, drive, kind, cfg.dynamics.dt_ps,
                   std::move(m0), cfg.solver);

  if (!ov.resume_path.empty()) {
    Checkpoint ckp;
    try {
      ckp = read_checkpoint(ov.resume_path, cfg.config_hash);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("resume: ") + e.what());
    }
    if (!ckp.state.m_curr.grid().same_shape(grid))
      throw ConfigError("resume: checkpoint grid does not match the scenario");
    integ.restore(ckp.state);
  }

  const fs::path dir(cfg.output.directory);
  fs::create_directories(dir);
  const long long snap_stride = cfg.output.snapshot_stride;
  const long long ckpt_stride = cfg.output.checkpoint_stride;
  if (snap_stride > 0) fs::create_directories(dir / "snapshots");

  TraceWriter trace((dir / "trace.csv").string());
  auto on_step = [&](const TraceRecord& rec) {
    if (rec.step % cfg.output.trace_stride == 0) trace.write(rec);
    if (rec.step > 0 && snap_stride > 0 && rec.step % snap_stride == 0)
      write_snapshot(
          (dir / "snapshots" / ("step_" + zero_padded(rec.step, 8) + ".snap"))
              .string(),
          integ.current());
    if (rec.step > 0 && ckpt_stride > 0 && rec.step % ckpt_stride == 0)
      write_checkpoint((dir / "checkpoint.ckpt").string(),
                       {cfg.config_hash, cfg.seed, integ.state()});
  };

  const long long budget = cfg.dynamics.max_steps - integ.step_count();
  if (budget < 0)
    throw ConfigError(
        "dynamics.max_steps: checkpoint is already past the step budget");

  SteadyResult steady;
  try {
    if (stop_at_steady) {
      SteadyOptions opts;
      opts.rel_tol = cfg.dynamics.steady_rel_tol;
      opts.abs_tol = cfg.dynamics.steady_abs_tol;
      opts.max_steps = budget;
      steady = run_to_steady(integ, opts, on_step);
    } else {
      run_steps(integ, budget, on_step);
    }
  } catch (const SolverError& e) {
    throw std::runtime_error("step " + std::to_string(integ.step_count() + 1) +
                             ": " + e.what());
  }

  const TraceRecord last = integ.trace_record();
  if (trace.last_step() != last.step) trace.write(last);
  export_field(dir, "final", integ.current(), cfg.output.write_vtk);
  if (ckpt_stride > 0)
    write_checkpoint((dir / "checkpoint.ckpt").string(),
                     {cfg.config_hash, cfg.seed, integ.state()});

  std::printf("%s: %lld steps, t = %.6g ps, energy = %.9g (%.6g J), q = %.4f",
              mode == RunMode::relax ? "relax" : "evolve", last.step,
              last.time_ps, last.energy, last.energy_J, last.q);
  if (stop_at_steady)
    std::printf(", steady state %s", steady.converged ? "reached" : "NOT reached");
  std::printf("\n  norm drift %.3g, wrote %s\n", integ.max_norm_drift(),
              (dir / "final.snap").c_str());
}

MagnetizationField make_endpoint(const StringEndpointConfig& ep,
                                 const ScenarioConfig& cfg,
                                 const GridSpec& grid, const char* name) {
  MagnetizationField m = build_initial_state(ep.init, grid, cfg.seed);
  if (!ep.relax) return m;
  constexpr long long kRelaxCap = 500000;
  Integrator integ(cfg.material, zero_drive(), Dynamics::heat_flow,
                   cfg.string_cfg.dt_ps, std::move(m), cfg.solver);
  const SteadyResult r = run_to_steady(integ, {1e-9, 1e-18, kRelaxCap});
  if (!r.converged)
    throw std::runtime_error(std::string(name) +
                             ": endpoint relaxation did not reach steady "
                             "state within the step cap");
  return integ.current();
}

void run_string_mode(const ScenarioConfig& cfg) {
  require_block(cfg.has_geometry, "geometry");
  require_block(cfg.has_material, "material");
  require_block(cfg.has_string, "string");
  if (norm(cfg.drive.uniform_field_T) != 0.0 ||
      !cfg.drive.local_fields.empty() || !cfg.drive.currents.empty())
    throw ConfigError(
        "drive: the transition path runs without drives; remove the block");

  const GridSpec grid = cfg.make_grid();
  const StringConfig& sc = cfg.string_cfg;
  MagnetizationField a =
      make_endpoint(sc.endpoint_a, cfg, grid, "string.endpoint_a");
  MagnetizationField b =
      make_endpoint(sc.endpoint_b, cfg, grid, "string.endpoint_b");

  StringSchedule sched;
  sched.tol = sc.tol;
  sched.max_iterations = sc.max_iterations;
  sched.dt_ps = sc.dt_ps;
  sched.inner_steps = sc.inner_steps;
  sched.krylov = cfg.solver;

  const MepReport report = run_string(a, b, sc.images - 1, sched, cfg.material);

  const fs::path dir(cfg.output.directory);
  fs::create_directories(dir);
  std::ofstream mep((dir / "mep.csv").string(), std::ios::trunc);
  if (!mep) throw std::runtime_error("string: cannot open mep.csv");
  mep << "image,arc_param,energy,energy_J,q,label\n";
  for (const MepImage& im : report.images) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,", im.index,
                  im.a, im.energy, im.energy_J, im.q);
    mep << buf << im.label << '\n';
  }
  for (std::size_t i = 0; i < report.path.images.size(); ++i)
    export_field(dir, "image_" + zero_padded(static_cast<long long>(i), 2),
                 report.path.images[i], cfg.output.write_vtk);

  std::printf(
      "string: %s after %lld iterations, %zu images, %zu interior maxima, "
      "%zu interior minima\n",
      report.converged ? "converged" : "NOT converged", report.iterations,
      report.images.size(), report.interior_maxima.size(),
      report.interior_minima.size());
  for (const MepImage& im : report.images)
    if (im.label != "-")
      std::printf("  image %02d  a = %.3f  energy = %.9g  q = %+.3f  %s\n",
                  im.index, im.a, im.energy, im.q, im.label.c_str());
}

void run_postprocess(const ScenarioConfig& cfg, const RunOverrides& ov) {
  require_block(cfg.has_material, "material");
  if (ov.snapshot_in.empty())
    throw ConfigError("postprocess: an input snapshot is required");

  MagnetizationField m;
  try {
    m = read_snapshot(ov.snapshot_in);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("postprocess: ") + e.what());
  }
  const GridSpec& grid = m.grid();
  if (std::abs(grid.length_scale_m - cfg.material.length_L) >
      1e-12 * cfg.material.length_L)
    throw ConfigError(
        "postprocess: snapshot length scale differs from "
        "material.length_scale_nm");
  if (cfg.has_geometry && !cfg.make_grid().same_shape(grid))
    throw ConfigError("postprocess: snapshot grid does not match geometry");

  const DimensionlessParams params = nondimensionalize(cfg.material);
  const DriveSpec drive = cfg.make_drive();
  const double I = energy(m, params, drive);
  const double I_J = I * energy_scale_J(cfg.material);
  const Vec3 avg = spatial_average(m);
  const double q = skyrmion_number(m);
  const EnergyDensityMaps maps = energy_density_maps(m, params, drive);

  const fs::path dir(cfg.output.directory);
  fs::create_directories(dir);
  write_snapshot((dir / "energy_density.snap").string(), maps.total);
  if (cfg.output.write_vtk) {
    write_vtk((dir / "m.vtk").string(), m, "m");
    write_vtk((dir / "energy_density.vtk").string(), maps.total,
              "energy_density");
    write_vtk((dir / "energy_density_dmi.vtk").string(), maps.dmi,
              "dmi_density");
    write_vtk((dir / "energy_density_other.vtk").string(), maps.non_dmi,
              "non_dmi_density");
  }

  nlohmann::json report;
  report["energy"] = I;
  report["energy_J"] = I_J;
  report["m_avg"] = {avg.x, avg.y, avg.z};
  report["q"] = q;
  report["q_layer"] = grid.nz / 2;
  report["cells"] = grid.cell_count();
  report["max_norm_deviation"] = max_norm_deviation(m);
  std::ofstream out((dir / "report.json").string(), std::ios::trunc);
  out << report.dump(2) << '\n';

  std::printf("postprocess: energy = %.9g (%.6g J), <m> = (%.4f, %.4f, %.4f), "
              "q = %.6f (layer %d)\n",
              I, I_J, avg.x, avg.y, avg.z, q, grid.nz / 2);
}

}  // namespace

void run_scenario(const ScenarioConfig& cfg, RunMode mode,
                  const RunOverrides& overrides) {
  const ScenarioConfig eff = with_overrides(cfg, overrides);
  switch (mode) {
    case RunMode::relax:
    case RunMode::evolve:
      run_dynamics(eff, mode, overrides);
      return;
    case RunMode::string_path:
      run_string_mode(eff);
      return;
    case RunMode::postprocess:
      run_postprocess(eff, overrides);
      return;
  }
}

}  // namespace chiralmag
