// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "fdran/ilp/model.hpp"
#include "fdran/lp/simplex.hpp"

namespace fdran {

struct PumpOptions {
  int n_flip = 15;
  int max_iterations = 200;
  int cycles_before_restart = 3;
  std::uint64_t seed = 1;
  LpOptions lp;
};

struct PumpResult {
  IntAssignment assignment;
  int iterations = 0;
  int flips = 0;
  int restarts = 0;
  bool used_fallback = false;
  std::vector<double> distances;  // distance after each LP solve
};

/// Alternates distance-LP solves and roundings until an integer-feasible
/// point appears. Falls back to the JT-of-all allocation after the iteration
/// cap; throws PumpFailed if that is infeasible too.
PumpResult feasibility_pump(const IlpModel& model, const PumpOptions& options = {});

}  // namespace fdran
