#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "chiralmag/config.hpp"
#include "chiralmag/errors.hpp"
#include "chiralmag/scenario.hpp"

namespace {

struct Args {
  std::string config;
  std::string output_dir;
  std::string resume;
  std::string snapshot;
  long long seed = -1;
  long long snapshot_stride = -1;
};

CLI::App* add_common(CLI::App* sub, Args& args) {
  sub->add_option("-c,--config", args.config, "scenario file (JSON)")
      ->required();
  sub->add_option("-o,--output-dir", args.output_dir,
                  "write artifacts here instead of output.directory");
  sub->add_option("--seed", args.seed, "override the scenario seed")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--snapshot-stride", args.snapshot_stride,
                  "override output.snapshot_stride")
      ->check(CLI::NonNegativeNumber);
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chiralmag: chiral magnet dynamics on a finite-difference grid"};
  app.require_subcommand(1);
  Args args;

  CLI::App* relax = add_common(
      app.add_subcommand("relax", "heat-flow relaxation to steady state"),
      args);
  relax->add_option("--resume", args.resume, "checkpoint file to resume from");

  CLI::App* evolve = add_common(
      app.add_subcommand("evolve",
                         "damped precessional dynamics with the drive "
                         "schedule"),
      args);
  evolve->add_option("--resume", args.resume, "checkpoint file to resume from");

  CLI::App* string_cmd = add_common(
      app.add_subcommand("string", "minimum energy path between two states"),
      args);

  CLI::App* post = add_common(
      app.add_subcommand("postprocess",
                         "charge, averages and energy maps from a snapshot"),
      args);
  post->add_option("-s,--snapshot", args.snapshot, "input state file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  chiralmag::RunMode mode = chiralmag::RunMode::postprocess;
  if (relax->parsed()) mode = chiralmag::RunMode::relax;
  if (evolve->parsed()) mode = chiralmag::RunMode::evolve;
  if (string_cmd->parsed()) mode = chiralmag::RunMode::string_path;

  try {
    chiralmag::ScenarioConfig cfg = chiralmag::load_scenario(args.config);
    chiralmag::RunOverrides ov;
    ov.output_dir = args.output_dir;
    ov.resume_path = args.resume;
    ov.snapshot_in = args.snapshot;
    ov.snapshot_stride = args.snapshot_stride;
    ov.seed = args.seed;
    chiralmag::run_scenario(cfg, mode, ov);
  } catch (const chiralmag::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
