// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/lp/problem.hpp"

#include <cmath>
#include <sstream>

#include "fdran/common/error.hpp"

namespace fdran {

std::string_view to_string(Sense s) {
  switch (s) {
    case Sense::kLe: return "<=";
    case Sense::kGe: return ">=";
    case Sense::kEq: return "=";
  }
  return "?";
}

double LinearRow::activity(const std::vector<double>& x) const {
  double s = 0.0;
  for (const auto& [j, a] : coefs) s += a * x[static_cast<std::size_t>(j)];
  return s;
}

int LpProblem::add_var(double lb, double ub, double cost) {
  objective.push_back(cost);
  lower.push_back(lb);
  upper.push_back(ub);
  return num_vars() - 1;
}

void LpProblem::validate() const {
  const auto n = objective.size();
  if (lower.size() != n || upper.size() != n) throw Error(ErrorCode::kDimensionMismatch, "bound vectors do not match");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(lower[j]) || !std::isfinite(upper[j])) {
      throw Error(ErrorCode::kBadBounds, "variable " + std::to_string(j) + " has an infinite bound");
    }
    if (lower[j] > upper[j]) throw Error(ErrorCode::kBadBounds, "variable " + std::to_string(j) + " has lb > ub");
    if (!std::isfinite(objective[j])) throw Error(ErrorCode::kDimensionMismatch, "non-finite objective coefficient");
  }
  for (const auto& r : rows) {
    if (!std::isfinite(r.rhs)) throw Error(ErrorCode::kDimensionMismatch, "non-finite right-hand side");
    for (const auto& [j, a] : r.coefs) {
      if (j < 0 || static_cast<std::size_t>(j) >= n || !std::isfinite(a)) {
        throw Error(ErrorCode::kDimensionMismatch, "row references an invalid column");
      }
    }
  }
}

std::string format_row(const LinearRow& row) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(row.sense) << ' ' << row.rhs << " :";
  for (const auto& [j, a] : row.coefs) os << ' ' << j << ':' << a;
  return os.str();
}

std::string LpProblem::dump() const {
  std::ostringstream os;
  os.precision(17);
  os << (maximize ? "max" : "min") << " :";
  for (std::size_t j = 0; j < objective.size(); ++j) {
    if (objective[j] != 0.0) os << ' ' << j << ':' << objective[j];
  }
  os << '\n';
  for (std::size_t j = 0; j < lower.size(); ++j) os << "bound " << j << ' ' << lower[j] << ' ' << upper[j] << '\n';
  for (const auto& r : rows) os << format_row(r) << '\n';
  return os.str();
}

}  // namespace fdran
