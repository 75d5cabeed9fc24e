// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdran/ilp/model.hpp"
#include "fdran/lp/simplex.hpp"
#include "fdran/tsra/cuts.hpp"

namespace fdran {

struct SolveLimits {
  double time_limit_ms = -1.0;  // negative: unlimited
  std::int64_t node_limit = -1;  // negative: unlimited
};

struct BnbOptions {
  SolveLimits limits;
  int cut_rounds = 3;
  bool use_cuts = true;
  bool strengthen_linking = true;
  bool keep_log = false;
  CutOptions cuts;
  LpOptions lp;
};

struct SolveResult {
  IntAssignment best;
  double energy = 0.0;
  bool proven_optimal = false;
  double global_lower_bound = 0.0;
  std::int64_t nodes = 0;
  double wall_ms = 0.0;
  double stage1_energy = 0.0;
  int pump_iterations = 0;
  bool pump_fallback = false;
  int cuts_added = 0;
  std::vector<double> incumbent_trace;  // e* after each improvement
  std::vector<std::string> log;         // "id parent lb action" per node
};

/// Best-first branch-and-cut on the light-load model from a feasible incumbent.
SolveResult branch_and_cut(const IlpModel& model, const IntAssignment& incumbent, const BnbOptions& options = {});

}  // namespace fdran
