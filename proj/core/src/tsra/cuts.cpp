// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/tsra/cuts.hpp"

#include <algorithm>
#include <cmath>

#include "fdran/tsra/distance.hpp"
#include "fdran/tsra/relaxation.hpp"

namespace fdran {
namespace {

bool integral_value(double v) { return std::fabs(v - std::round(v)) <= 1e-9; }

struct Candidate {
  LinearRow row;
  double efficacy = 0.0;
};

// Cut sum_k g_k x_k >= rhs in structural space, cleaned and scaled.
bool finalize(std::vector<double>& g, double rhs, const SimplexSolver& s, const std::vector<double>& x,
              const CutOptions& opt, Candidate& out) {
  const int n = s.num_structural();
  double gmax = 0.0;
  for (double v : g) gmax = std::max(gmax, std::fabs(v));
  if (!(gmax > 0.0) || !std::isfinite(gmax) || !std::isfinite(rhs)) return false;
  // Drop negligible terms, relaxing the right-hand side by their largest contribution.
  for (int k = 0; k < n; ++k) {
    double& v = g[static_cast<std::size_t>(k)];
    if (v != 0.0 && std::fabs(v) < 1e-9 * gmax) {
      rhs -= std::max(v * s.lower(k), v * s.upper(k));
      v = 0.0;
    }
  }
  double gmin = gmax;
  for (double v : g) {
    if (v != 0.0) gmin = std::min(gmin, std::fabs(v));
  }
  if (gmax / gmin > opt.max_dynamism) return false;
  LinearRow row;
  row.sense = Sense::kGe;
  double norm2 = 0.0, lhs = 0.0;
  for (int k = 0; k < n; ++k) {
    const double v = g[static_cast<std::size_t>(k)] / gmax;
    if (v == 0.0) continue;
    row.coefs.emplace_back(k, v);
    norm2 += v * v;
    lhs += v * x[static_cast<std::size_t>(k)];
  }
  row.rhs = rhs / gmax;
  // Safety margin against round-off in the tableau.
  row.rhs -= 1e-9 * (1.0 + std::fabs(row.rhs));
  const double violation = row.rhs - lhs;
  if (violation <= opt.min_violation || row.coefs.empty()) return false;
  out.row = std::move(row);
  out.efficacy = violation / std::sqrt(norm2);
  return true;
}

}  // namespace

std::vector<LinearRow> gomory_cuts(const SimplexSolver& solver, const LpProblem& problem, int integer_vars,
                                   const std::vector<double>& x, const CutOptions& opt) {
  const int n = solver.num_structural();
  const int m = solver.num_rows();
  struct Source {
    int pos;
    double f0;
  };
  std::vector<Source> sources;
  for (int r = 0; r < m; ++r) {
    const int v = solver.basic_variable(r);
    if (v >= integer_vars) continue;
    const double val = solver.value(v);
    const double f0 = val - std::floor(val);
    if (f0 < opt.min_fraction || f0 > 1.0 - opt.min_fraction) continue;
    sources.push_back({r, f0});
  }
  std::stable_sort(sources.begin(), sources.end(), [](const Source& a, const Source& b) {
    return std::fabs(a.f0 - 0.5) < std::fabs(b.f0 - 0.5);
  });
  if (sources.size() > static_cast<std::size_t>(4 * opt.max_cuts)) sources.resize(static_cast<std::size_t>(4 * opt.max_cuts));

  std::vector<Candidate> found;
  for (const Source& src : sources) {
    const Eigen::VectorXd alpha = solver.tableau_row(src.pos);
    const double f0 = src.f0;
    // Row in t-space: x_i + sum abar_j t_j = beta, giving the GMI cut
    // sum pi_j t_j >= 1.
    std::vector<double> g(static_cast<std::size_t>(n), 0.0);
    double rhs = 1.0;
    bool ok = true;
    for (int j = 0; j < n + m && ok; ++j) {
      const BasisStatus st = solver.status(j);
      if (st == BasisStatus::kBasic) continue;
      const double lo = solver.lower(j), hi = solver.upper(j);
      if (hi - lo <= 0.0) continue;  // fixed within this subtree
      const double a = alpha(j);
      if (std::fabs(a) < 1e-12) continue;
      if (std::fabs(a) > 1e7) {
        ok = false;
        break;
      }
      const bool at_upper = st == BasisStatus::kAtUpper;
      const double abar = at_upper ? -a : a;
      const bool int_t = j < integer_vars && integral_value(lo) && integral_value(hi);
      double pi;
      if (int_t) {
        const double fj = abar - std::floor(abar);
        pi = fj <= f0 ? fj / f0 : (1.0 - fj) / (1.0 - f0);
      } else {
        pi = abar >= 0.0 ? abar / f0 : -abar / (1.0 - f0);
      }
      if (pi == 0.0) continue;
      // t_j = z_j - lo (at lower) or hi - z_j (at upper).
      const double zc = at_upper ? -pi : pi;
      rhs += at_upper ? -pi * hi : pi * lo;
      if (j < n) {
        g[static_cast<std::size_t>(j)] += zc;
      } else {
        for (const auto& [k, c] : problem.rows[static_cast<std::size_t>(j - n)].coefs) {
          g[static_cast<std::size_t>(k)] += zc * c;
        }
      }
    }
    if (!ok) continue;
    Candidate c;
    if (finalize(g, rhs, solver, x, opt, c)) found.push_back(std::move(c));
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const Candidate& a, const Candidate& b) { return a.efficacy > b.efficacy; });
  std::vector<LinearRow> out;
  for (auto& c : found) {
    if (static_cast<int>(out.size()) >= opt.max_cuts) break;
    out.push_back(std::move(c.row));
  }
  return out;
}

std::vector<LinearRow> generate_cuts(const IlpModel& model, const SimplexSolver& solver, const LpProblem& problem,
                                     const std::vector<double>& x, const CutOptions& options) {
  if (is_integral(x, model.num_vars(), options.integrality_tol)) return {};
  std::vector<LinearRow> out;
  for (auto& row : linking_strengthening_rows(model)) {
    if (row.activity(x) > row.rhs + options.min_violation) out.push_back(std::move(row));
  }
  auto gmi = gomory_cuts(solver, problem, model.num_vars(), x, options);
  for (auto& r : gmi) {
    if (static_cast<int>(out.size()) >= options.max_cuts) break;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace fdran
