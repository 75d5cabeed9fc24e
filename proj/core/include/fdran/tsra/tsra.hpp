// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fdran/tsra/branch_and_cut.hpp"
#include "fdran/tsra/pump.hpp"

namespace fdran {

struct TsraOptions {
  PumpOptions pump;
  BnbOptions bnb;
};

/// Feasibility pump for an incumbent, then branch-and-cut to optimality or
/// the configured limits.
SolveResult tsra(const IlpModel& model, const TsraOptions& options = {});

}  // namespace fdran
