// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/tsra/branch_and_cut.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <queue>
#include <sstream>

#include "fdran/common/error.hpp"
#include "fdran/tsra/distance.hpp"
#include "fdran/tsra/relaxation.hpp"

namespace fdran {
namespace {

struct Node {
  std::int64_t id = 0;
  std::int64_t parent = -1;
  int depth = 0;
  double bound = 0.0;  // parent LP bound
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<LinearRow> local_cuts;
  LpBasis basis;
};

struct NodeOrder {
  bool operator()(const std::shared_ptr<Node>& a, const std::shared_ptr<Node>& b) const {
    if (a->bound != b->bound) return a->bound > b->bound;
    return a->id > b->id;
  }
};

std::string log_line(std::int64_t id, std::int64_t parent, double lb, const char* action) {
  std::ostringstream os;
  os.precision(12);
  os << id << ' ' << parent << ' ';
  if (std::isfinite(lb)) {
    os << lb;
  } else {
    os << "inf";
  }
  os << ' ' << action;
  return os.str();
}

}  // namespace

SolveResult branch_and_cut(const IlpModel& model, const IntAssignment& incumbent, const BnbOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  if (!check_assignment(model, incumbent).feasible) {
    throw Error(ErrorCode::kInvalidArgument, "branch_and_cut needs a feasible incumbent");
  }
  SolveResult res;
  res.best = incumbent;
  res.energy = energy(model, incumbent);
  res.stage1_energy = res.energy;
  res.incumbent_trace.push_back(res.energy);
  std::int64_t best_units = energy_units(model, incumbent);
  const double p = model.power;

  const auto& lim = options.limits;
  if (lim.time_limit_ms == 0.0 || lim.node_limit == 0) {
    res.proven_optimal = false;
    res.global_lower_bound = 0.0;
    res.wall_ms = elapsed_ms();
    return res;
  }

  const int n = model.num_vars();
  const LpProblem base = model.relaxation();
  std::vector<LinearRow> global_cuts;
  if (options.strengthen_linking) global_cuts = linking_strengthening_rows(model);

  // Energy is p times an integer, so a bound rounds up to the next multiple.
  auto prunable = [&](double lb) {
    return static_cast<std::int64_t>(std::ceil(lb / p - 1e-6)) >= best_units;
  };

  std::priority_queue<std::shared_ptr<Node>, std::vector<std::shared_ptr<Node>>, NodeOrder> open;
  auto root = std::make_shared<Node>();
  root->lower = base.lower;
  root->upper = base.upper;
  root->bound = -std::numeric_limits<double>::infinity();
  open.push(root);
  std::int64_t next_id = 1;
  bool limit_hit = false;
  double limit_bound = std::numeric_limits<double>::infinity();

  while (!open.empty()) {
    if ((lim.time_limit_ms > 0.0 && elapsed_ms() >= lim.time_limit_ms) ||
        (lim.node_limit > 0 && res.nodes >= lim.node_limit)) {
      limit_hit = true;
      break;
    }
    std::shared_ptr<Node> node = open.top();
    open.pop();
    if (prunable(node->bound)) {
      if (options.keep_log) res.log.push_back(log_line(node->id, node->parent, node->bound, "prune"));
      continue;
    }
    ++res.nodes;

    std::vector<LinearRow> rows = global_cuts;
    rows.insert(rows.end(), node->local_cuts.begin(), node->local_cuts.end());
    LpProblem lp = with_rows_and_bounds(base, rows, node->lower, node->upper);
    auto solver = std::make_unique<SimplexSolver>(lp, options.lp);
    LpSolution sol = solver->solve(node->basis);
    const char* action = nullptr;
    int rounds = 0;
    while (true) {
      if (sol.status == LpStatus::kIterationLimit) {
        // Cannot bound this subtree; keep the incumbent but drop the proof.
        limit_hit = true;
        limit_bound = std::min(limit_bound, node->bound);
        action = "prune";
        break;
      }
      if (sol.status == LpStatus::kInfeasible || prunable(sol.objective)) {
        action = "prune";
        break;
      }
      if (is_integral(sol.x, n)) {
        action = "integral";
        break;
      }
      if (!options.use_cuts || rounds >= options.cut_rounds) break;
      auto cuts = generate_cuts(model, *solver, lp, sol.x, options.cuts);
      if (cuts.empty()) break;
      ++rounds;
      res.cuts_added += static_cast<int>(cuts.size());
      if (node->id == 0) {
        global_cuts.insert(global_cuts.end(), cuts.begin(), cuts.end());
      } else {
        node->local_cuts.insert(node->local_cuts.end(), cuts.begin(), cuts.end());
      }
      lp.rows.insert(lp.rows.end(), cuts.begin(), cuts.end());
      const LpBasis warm = sol.basis;
      solver = std::make_unique<SimplexSolver>(lp, options.lp);
      sol = solver->solve(warm);
      if (options.keep_log) res.log.push_back(log_line(node->id, node->parent, sol.objective, "cut"));
    }
    const double lb = sol.status == LpStatus::kOptimal ? sol.objective : std::numeric_limits<double>::infinity();

    if (action != nullptr && std::string_view(action) == "integral") {
      IntAssignment cand = round_point(model, sol.x);
      if (check_assignment(model, cand).feasible) {
        const std::int64_t units = energy_units(model, cand);
        if (units < best_units || (units == best_units && cand < res.best)) {
          best_units = units;
          res.best = std::move(cand);
          res.energy = p * static_cast<double>(units);
          res.incumbent_trace.push_back(res.energy);
        }
      } else {
        // Integral within tolerance yet exactly infeasible: the subtree is unresolved.
        limit_hit = true;
        limit_bound = std::min(limit_bound, lb);
      }
    }
    if (action == nullptr) {
      // Most fractional variable; selection variables win ties.
      int var = -1;
      double best_frac = -1.0;
      for (int j = 0; j < n; ++j) {
        const double v = sol.x[static_cast<std::size_t>(j)];
        const double f = v - std::floor(v);
        const double score = std::min(f, 1.0 - f);
        if (score <= 1e-6) continue;
        const bool better = score > best_frac + 1e-12 ||
                            (std::fabs(score - best_frac) <= 1e-12 && var >= 0 &&
                             model.vars[static_cast<std::size_t>(j)].kind == VarKind::kSelect &&
                             model.vars[static_cast<std::size_t>(var)].kind != VarKind::kSelect);
        if (better) {
          best_frac = score;
          var = j;
        }
      }
      if (var < 0) {
        limit_hit = true;
        limit_bound = std::min(limit_bound, lb);
        if (options.keep_log) res.log.push_back(log_line(node->id, node->parent, lb, "prune"));
        continue;
      }
      const double v = sol.x[static_cast<std::size_t>(var)];
      auto down = std::make_shared<Node>();
      down->id = next_id++;
      down->parent = node->id;
      down->depth = node->depth + 1;
      down->bound = lb;
      down->lower = node->lower;
      down->upper = node->upper;
      down->upper[static_cast<std::size_t>(var)] = std::floor(v);
      down->local_cuts = node->local_cuts;
      down->basis = sol.basis;
      auto up = std::make_shared<Node>(*down);
      up->id = next_id++;
      up->upper[static_cast<std::size_t>(var)] = node->upper[static_cast<std::size_t>(var)];
      up->lower[static_cast<std::size_t>(var)] = std::ceil(v);
      open.push(std::move(down));
      open.push(std::move(up));
      action = "branch";
    }
    if (options.keep_log) res.log.push_back(log_line(node->id, node->parent, lb, action));
  }

  double global_lb = limit_bound;
  if (limit_hit) {
    while (!open.empty()) {
      global_lb = std::min(global_lb, open.top()->bound);
      open.pop();
    }
    res.proven_optimal = false;
    res.global_lower_bound = std::min(std::max(global_lb, 0.0), res.energy);
  } else {
    res.proven_optimal = true;
    res.global_lower_bound = res.energy;
  }
  res.wall_ms = elapsed_ms();
  return res;
}

}  // namespace fdran
