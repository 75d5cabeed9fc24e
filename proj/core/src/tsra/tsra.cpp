// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/tsra/tsra.hpp"

#include <algorithm>
#include <chrono>

namespace fdran {

SolveResult tsra(const IlpModel& model, const TsraOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const PumpResult pump = feasibility_pump(model, options.pump);
  BnbOptions bnb = options.bnb;
  if (bnb.limits.time_limit_ms > 0.0) {
    const double spent = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    bnb.limits.time_limit_ms = std::max(bnb.limits.time_limit_ms - spent, 1e-3);
  }
  SolveResult res = branch_and_cut(model, pump.assignment, bnb);
  res.stage1_energy = energy(model, pump.assignment);
  res.pump_iterations = pump.iterations;
  res.pump_fallback = pump.used_fallback;
  res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace fdran
