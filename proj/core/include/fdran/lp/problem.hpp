// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fdran {

enum class Sense : std::uint8_t { kLe, kGe, kEq };

std::string_view to_string(Sense s);

struct LinearRow {
  std::vector<std::pair<int, double>> coefs;
  Sense sense = Sense::kLe;
  double rhs = 0.0;

  double activity(const std::vector<double>& x) const;
};

/// Box-bounded linear program.
struct LpProblem {
  bool maximize = false;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<LinearRow> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
  int add_var(double lb, double ub, double cost);
  /// Throws BadBounds when lb > ub or a bound is not finite, DimensionMismatch
  /// on inconsistent sizes or out-of-range column indices.
  void validate() const;
  /// One row per line: "<sense> <rhs> : j:a ...".
  std::string dump() const;
};

/// Shared row line format, also used by the ILP model dump.
std::string format_row(const LinearRow& row);

}  // namespace fdran
