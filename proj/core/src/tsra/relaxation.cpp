// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/tsra/relaxation.hpp"

#include "fdran/common/error.hpp"

namespace fdran {

LpProblem with_rows_and_bounds(const LpProblem& base, const std::vector<LinearRow>& extra,
                               const std::vector<double>& lower, const std::vector<double>& upper) {
  LpProblem p = base;
  if (lower.size() != p.lower.size() || upper.size() != p.upper.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "bound override size mismatch");
  }
  p.lower = lower;
  p.upper = upper;
  p.rows.insert(p.rows.end(), extra.begin(), extra.end());
  return p;
}

LpProblem distance_problem(const IlpModel& model, const IntAssignment& target) {
  LpProblem p = model.relaxation();
  const int n = model.num_vars();
  std::fill(p.objective.begin(), p.objective.end(), 0.0);
  for (int j = 0; j < n; ++j) {
    const auto& v = model.vars[static_cast<std::size_t>(j)];
    if (v.kind != VarKind::kSelect) continue;
    p.objective[static_cast<std::size_t>(j)] = target.values[static_cast<std::size_t>(j)] >= 1 ? -1.0 : 1.0;
  }
  const auto k = static_cast<double>(model.k);
  for (int j = 0; j < n; ++j) {
    if (model.vars[static_cast<std::size_t>(j)].kind != VarKind::kAlloc) continue;
    const int plus = p.add_var(0.0, k, 1.0);
    const int minus = p.add_var(0.0, k, 1.0);
    p.rows.push_back(LinearRow{{{j, 1.0}, {plus, -1.0}, {minus, 1.0}},
                               Sense::kEq,
                               static_cast<double>(target.values[static_cast<std::size_t>(j)])});
  }
  return p;
}

double distance_offset(const IlpModel& model, const IntAssignment& target) {
  double c = 0.0;
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    if (model.vars[j].kind == VarKind::kSelect && target.values[j] >= 1) c += 1.0;
  }
  return c;
}

std::vector<LinearRow> linking_strengthening_rows(const IlpModel& model) {
  std::vector<LinearRow> out;
  for (int s = 0; s < model.num_sets(); ++s) {
    for (int u = 0; u < model.num_users(); ++u) {
      const std::int64_t r = model.rate(s, u);
      const std::int64_t d = model.users[static_cast<std::size_t>(u)].demand;
      const std::int64_t cap = r > 0 ? (d + r - 1) / r : 0;
      if (static_cast<double>(cap) >= model.lambda) continue;
      out.push_back(LinearRow{{{model.alloc_index(s, u), 1.0}, {model.select_index(s, u), -static_cast<double>(cap)}},
                              Sense::kLe,
                              0.0});
    }
  }
  return out;
}

}  // namespace fdran
