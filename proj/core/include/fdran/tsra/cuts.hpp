// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "fdran/ilp/model.hpp"
#include "fdran/lp/simplex.hpp"

namespace fdran {

struct CutOptions {
  int max_cuts = 10;
  double min_fraction = 0.01;
  double max_dynamism = 1e6;
  double min_violation = 1e-6;
  double integrality_tol = 1e-6;
};

/// Gomory mixed-integer cuts read from the optimal tableau of `solver`.
/// The first `integer_vars` structurals are integer; the rest (and all
/// logicals) are treated as continuous. Cuts are expressed over structurals
/// and are valid wherever the solver's current bounds hold.
std::vector<LinearRow> gomory_cuts(const SimplexSolver& solver, const LpProblem& problem, int integer_vars,
                                   const std::vector<double>& x, const CutOptions& options = {});

/// Cut generation for a node LP of the light-load model: Gomory cuts plus
/// violated linking-strengthening rows. Empty when x is integral.
std::vector<LinearRow> generate_cuts(const IlpModel& model, const SimplexSolver& solver, const LpProblem& problem,
                                     const std::vector<double>& x, const CutOptions& options = {});

}  // namespace fdran
