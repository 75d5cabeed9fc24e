// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/tsra/distance.hpp"

#include <algorithm>
#include <cmath>

#include "fdran/common/error.hpp"

namespace fdran {

double rounding_distance(const IlpModel& model, const std::vector<double>& x, const IntAssignment& target) {
  if (x.size() < model.vars.size() || target.values.size() != model.vars.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "distance inputs do not match the model");
  }
  const auto k = static_cast<double>(model.k);
  double d = 0.0;
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    const double v = x[j];
    const auto t = static_cast<double>(target.values[j]);
    if (model.vars[j].kind == VarKind::kSelect) {
      d += t >= 1.0 ? 1.0 - v : v;
    } else if (t <= 0.0) {
      d += v;
    } else if (t >= k) {
      d += k - v;
    } else {
      d += std::fabs(v - t);
    }
  }
  return d;
}

IntAssignment round_point(const IlpModel& model, const std::vector<double>& x) {
  IntAssignment a;
  a.values.resize(model.vars.size());
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    const double v = std::clamp(std::round(x[j]), model.vars[j].lower, model.vars[j].upper);
    a.values[j] = static_cast<std::int64_t>(v);
  }
  return a;
}

bool is_integral(const std::vector<double>& x, int count, double tol) {
  for (int j = 0; j < count; ++j) {
    const double v = x[static_cast<std::size_t>(j)];
    if (std::fabs(v - std::round(v)) > tol) return false;
  }
  return true;
}

}  // namespace fdran
