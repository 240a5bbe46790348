#pragma once

#include <string>

#include "chiralmag/config.hpp"

namespace chiralmag {

enum class RunMode { relax, evolve, string_path, postprocess };

/// Command-line overrides applied on top of the scenario file.
struct RunOverrides {
  std::string output_dir;          ///< empty: use output.directory
  std::string resume_path;         ///< relax/evolve: checkpoint to resume
  std::string snapshot_in;         ///< postprocess: input state
  long long snapshot_stride = -1;  ///< -1: use output.snapshot_stride
  long long seed = -1;             ///< -1: use the scenario seed
};

/// Execute one scenario end to end and write its artifacts:
///
///   relax / evolve   trace.csv, final.snap (+ .vtk), periodic snapshots,
///                    rotating checkpoint.ckpt when a stride is configured
///   string           mep.csv, image_NN.snap (+ .vtk)
///   postprocess      report.json, energy_density.snap (+ maps/field as .vtk)
///
/// relax runs the heat flow and stops at steady state by default; evolve
/// runs the damped precessional dynamics with the drive schedule. Scenario
/// problems raise ConfigError (process exit 1); solver and I/O failures
/// raise other exceptions (exit 2).
void run_scenario(const ScenarioConfig& cfg, RunMode mode,
                  const RunOverrides& overrides = {});

}  // namespace chiralmag
