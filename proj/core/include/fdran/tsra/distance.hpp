// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "fdran/ilp/model.hpp"

namespace fdran {

/// L1 distance between a fractional point and an integer rounding target.
/// For delta and for o targets at a bound this is the linear bound distance;
/// interior o targets contribute |o - target|.
double rounding_distance(const IlpModel& model, const std::vector<double>& x, const IntAssignment& target);

/// Componentwise nearest-integer rounding, clamped to variable bounds.
IntAssignment round_point(const IlpModel& model, const std::vector<double>& x);

/// True when every model variable is within tol of an integer.
bool is_integral(const std::vector<double>& x, int count, double tol = 1e-6);

}  // namespace fdran
