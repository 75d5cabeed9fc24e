// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "fdran/ilp/model.hpp"
#include "fdran/lp/problem.hpp"

namespace fdran {

/// Base LP plus extra rows, with replacement bounds on the structural variables.
LpProblem with_rows_and_bounds(const LpProblem& base, const std::vector<LinearRow>& extra,
                               const std::vector<double>& lower, const std::vector<double>& upper);

/// Pump distance LP. Variables are the model variables followed by (o+, o-)
/// per allocation variable; rows are the relaxation rows followed by
/// o - o+ + o- = target per allocation variable. The objective omits the
/// constant sum over delta targets equal to 1.
LpProblem distance_problem(const IlpModel& model, const IntAssignment& target);

/// Constant term dropped from the distance LP objective.
double distance_offset(const IlpModel& model, const IntAssignment& target);

/// Rows o_{B,n} <= ceil(R^d / R^1_B) delta_{B,n} where tighter than lambda.
/// Every optimal assignment satisfies them.
std::vector<LinearRow> linking_strengthening_rows(const IlpModel& model);

}  // namespace fdran
