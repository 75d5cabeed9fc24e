// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "fdran/common/error.hpp"
#include "fdran/oracle/verify.hpp"

namespace fdran::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitInfeasible = 3,
  kExitLimit = 4,  // solver limit hit before optimality was proven
  kExitPumpFailed = 5,
};

/// Maps library errors to exit codes.
int exit_code_for(const Error& e);

struct MapOptions {
  std::filesystem::path out;  // default: <output_dir>/map.bin
  int jobs = 1;
};

struct ScheduleOptions {
  bool force = false;  // run light mode on a heavy-load instance
  double time_limit_ms = -1.0;
  std::int64_t node_limit = -1;
  std::filesystem::path out_dir = ".";
};

struct SimulateOptions {
  int jobs = 1;
  std::filesystem::path map;   // reuse a saved map instead of building one
  bool dispatch_log = false;   // also write dispatch_<seed>.csv
};

int cmd_build_map(const RunConfig& cfg, const MapOptions& opt, std::ostream& out);

/// mode is "heavy" or "light"; the instance is a JSON file (see README).
int cmd_schedule(const std::string& mode, const std::filesystem::path& instance, const ScheduleOptions& opt,
                 std::ostream& out);

int cmd_simulate(const RunConfig& cfg, const SimulateOptions& opt, std::ostream& out);

int cmd_verify(const VerifyCaps& caps, std::ostream& out, const VerifyHooks& hooks = {});

}  // namespace fdran::cli
