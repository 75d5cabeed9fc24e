// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/tsra/pump.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "fdran/common/error.hpp"
#include "fdran/common/random.hpp"
#include "fdran/tsra/distance.hpp"
#include "fdran/tsra/relaxation.hpp"

namespace fdran {
namespace {

void flip_var(const IlpModel& model, IntAssignment& target, const std::vector<double>& x, std::size_t j) {
  const auto& v = model.vars[j];
  auto& t = target.values[j];
  if (v.kind == VarKind::kSelect) {
    t = 1 - t;
  } else {
    t += x[j] > static_cast<double>(t) ? 1 : -1;
    t = std::clamp<std::int64_t>(t, static_cast<std::int64_t>(v.lower), static_cast<std::int64_t>(v.upper));
  }
}

PumpResult fallback(const IlpModel& model, PumpResult res) {
  IntAssignment jt = jt_all_assignment(model);
  if (!check_assignment(model, jt).feasible) {
    throw Error(ErrorCode::kPumpFailed, "pump exhausted and the JT-of-all allocation is infeasible");
  }
  res.assignment = std::move(jt);
  res.used_fallback = true;
  return res;
}

}  // namespace

PumpResult feasibility_pump(const IlpModel& model, const PumpOptions& options) {
  if (options.n_flip < 1) throw Error(ErrorCode::kInvalidArgument, "n_flip must be >= 1");
  PumpResult res;
  const int n = model.num_vars();
  const LpSolution root = solve_lp(model.relaxation(), options.lp);
  if (root.status != LpStatus::kOptimal) return fallback(model, std::move(res));
  if (is_integral(root.x, n)) {
    IntAssignment a = round_point(model, root.x);
    if (check_assignment(model, a).feasible) {
      res.assignment = std::move(a);
      return res;
    }
  }

  Rng rng(options.seed);
  IntAssignment target = round_point(model, root.x);
  std::set<std::vector<std::int64_t>> visited{target.values};
  int cycles = 0;
  LpBasis basis;
  std::vector<double> x = root.x;

  auto adopt = [&](IntAssignment next) {
    if (!visited.insert(next.values).second) ++cycles;
    target = std::move(next);
  };

  for (int it = 1; it <= options.max_iterations; ++it) {
    if (check_assignment(model, target).feasible) {
      res.assignment = target;
      res.iterations = it - 1;
      return res;
    }
    const LpProblem dist = distance_problem(model, target);
    LpSolution sol = basis.empty() ? solve_lp(dist, options.lp) : reoptimize(dist, basis, options.lp);
    if (sol.status != LpStatus::kOptimal) break;
    basis = sol.basis;
    x.assign(sol.x.begin(), sol.x.begin() + n);
    res.iterations = it;
    const double d = rounding_distance(model, x, target);
    res.distances.push_back(d);

    IntAssignment rounded = round_point(model, x);
    if (d <= 1e-9 || is_integral(x, n)) {
      if (check_assignment(model, rounded).feasible) {
        res.assignment = std::move(rounded);
        return res;
      }
    }
    if (rounded != target) {
      adopt(std::move(rounded));
    } else {
      // Stalled: push the most distant entries to their other rounding.
      std::vector<std::size_t> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      std::vector<double> score(static_cast<std::size_t>(n));
      for (std::size_t j = 0; j < score.size(); ++j) score[j] = std::fabs(x[j] - static_cast<double>(target.values[j]));
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
      IntAssignment next = target;
      int flipped = 0;
      for (std::size_t idx = 0; idx < order.size() && flipped < options.n_flip; ++idx) {
        if (score[order[idx]] <= 1e-9) break;
        flip_var(model, next, x, order[idx]);
        ++flipped;
      }
      res.flips += flipped;
      adopt(std::move(next));
    }
    if (cycles >= options.cycles_before_restart) {
      IntAssignment next = target;
      for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
        const double r = rng.uniform(-0.3, 0.7);
        if (std::fabs(x[j] - static_cast<double>(target.values[j])) + std::max(r, 0.0) > 0.5) {
          flip_var(model, next, x, j);
        }
      }
      target = std::move(next);
      visited.insert(target.values);
      cycles = 0;
      ++res.restarts;
    }
  }
  if (check_assignment(model, target).feasible) {
    res.assignment = target;
    return res;
  }
  return fallback(model, std::move(res));
}

}  // namespace fdran
