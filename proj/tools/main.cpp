// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <numeric>

#include "CLI11.hpp"
#include "commands.hpp"
#include "fdran/common/error.hpp"

namespace {

using namespace fdran;
using namespace fdran::cli;

struct CommonFlags {
  std::string config;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::vector<std::uint64_t> seeds;
  int episodes = 0;
  std::string out_dir;
  int jobs = 1;
  double time_limit_ms = -1.0;
  std::int64_t node_limit = -1;
};

void add_run_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--preset", f.preset, "base preset")->check(CLI::IsMember({"paper-3bs", "tiny"}));
  cmd->add_option("--seed", f.seed, "seed for the episode (or first of --episodes)");
  cmd->add_option("--seeds", f.seeds, "explicit episode seeds");
  cmd->add_option("--episodes", f.episodes, "run seeds seed..seed+episodes-1")->check(CLI::NonNegativeNumber);
  cmd->add_option("--out-dir", f.out_dir, "output directory");
  cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
}

RunConfig resolve(const CommonFlags& f) {
  RunConfig cfg;
  if (!f.config.empty()) {
    cfg = load_run_config(f.config);
    if (!f.preset.empty() && f.preset != cfg.preset) {
      throw Error(ErrorCode::kConfigError, "--preset conflicts with the preset in " + f.config);
    }
  } else if (!f.preset.empty()) {
    cfg = preset_run_config(f.preset);
  }
  if (f.seed) cfg.sim.seed = *f.seed;
  if (!f.seeds.empty()) cfg.seeds = f.seeds;
  if (f.episodes > 0) {
    cfg.seeds.resize(static_cast<std::size_t>(f.episodes));
    std::iota(cfg.seeds.begin(), cfg.seeds.end(), cfg.sim.seed);
  }
  if (!f.out_dir.empty()) cfg.output_dir = f.out_dir;
  if (f.time_limit_ms >= 0) cfg.sim.time_limit_ms = f.time_limit_ms;
  if (f.node_limit >= 0) cfg.sim.node_limit = f.node_limit;
  cfg.sim.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fdran: feedback-free cooperative scheduling for distributed RAN"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "fdran 0.1.0");

  CommonFlags map_flags;
  MapOptions map_opt;
  auto* build_map = app.add_subcommand("build-map", "build and save the feedback-free rate map");
  add_run_flags(build_map, map_flags);
  build_map->add_option("--out", map_opt.out, "map file (default <out-dir>/map.bin)");

  std::string mode;
  std::string instance;
  ScheduleOptions sched_opt;
  std::string sched_out;
  auto add_schedule = [&](const char* name, const char* help, bool with_mode) {
    auto* cmd = app.add_subcommand(name, help);
    if (with_mode) cmd->add_option("--mode", mode, "heavy or light")->required()->check(CLI::IsMember({"heavy", "light"}));
    cmd->add_option("instance", instance, "instance file (JSON or JSON lines)")->required()->check(CLI::ExistingFile);
    cmd->add_flag("--force", sched_opt.force, "run light mode on a heavy-load instance");
    cmd->add_option("--time-limit-ms", sched_opt.time_limit_ms, "solver wall-clock limit");
    cmd->add_option("--node-limit", sched_opt.node_limit, "branch-and-cut node limit");
    cmd->add_option("--out-dir", sched_out, "directory for allocation.csv and resource_map.csv");
    return cmd;
  };
  auto* schedule = add_schedule("schedule", "solve one scheduling instance", true);
  auto* schedule_heavy = add_schedule("schedule-heavy", "solve one heavy-load instance", false);
  auto* schedule_light = add_schedule("schedule-light", "solve one light-load instance", false);

  CommonFlags sim_flags;
  SimulateOptions sim_opt;
  std::string sim_map;
  auto* simulate = app.add_subcommand("simulate", "run scheduling episodes");
  add_run_flags(simulate, sim_flags);
  simulate->add_option("--map", sim_map, "saved rate map")->check(CLI::ExistingFile);
  simulate->add_flag("--dispatch-log", sim_opt.dispatch_log, "write per-decision dispatch CSVs");
  simulate->add_option("--time-limit-ms", sim_flags.time_limit_ms, "per-decision solver limit");
  simulate->add_option("--node-limit", sim_flags.node_limit, "per-decision node limit");

  VerifyCaps caps;
  auto* verify = app.add_subcommand("verify", "compare schedulers against brute-force oracles");
  verify->add_option("--heavy-instances", caps.heavy_instances);
  verify->add_option("--heavy-max-users", caps.heavy_max_users);
  verify->add_option("--heavy-max-k", caps.heavy_max_k);
  verify->add_option("--light-instances", caps.light_instances);
  verify->add_option("--light-max-bs", caps.light_max_bs);
  verify->add_option("--light-max-users", caps.light_max_users);
  verify->add_option("--light-max-k", caps.light_max_k);
  verify->add_option("--seed", caps.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (build_map->parsed()) {
      map_opt.jobs = map_flags.jobs;
      return cmd_build_map(resolve(map_flags), map_opt, std::cout);
    }
    if (schedule->parsed() || schedule_heavy->parsed() || schedule_light->parsed()) {
      if (schedule_heavy->parsed()) mode = "heavy";
      if (schedule_light->parsed()) mode = "light";
      if (!sched_out.empty()) sched_opt.out_dir = sched_out;
      return cmd_schedule(mode, instance, sched_opt, std::cout);
    }
    if (simulate->parsed()) {
      sim_opt.jobs = sim_flags.jobs;
      sim_opt.map = sim_map;
      return cmd_simulate(resolve(sim_flags), sim_opt, std::cout);
    }
    if (verify->parsed()) {
      caps.validate();
      return cmd_verify(caps, std::cout);
    }
  } catch (const Error& e) {
    std::cerr << "fdran: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "fdran: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
