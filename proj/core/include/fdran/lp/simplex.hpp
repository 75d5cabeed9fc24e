// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "fdran/lp/problem.hpp"

namespace fdran {

enum class LpStatus : std::uint8_t { kOptimal, kInfeasible, kIterationLimit };

std::string_view to_string(LpStatus s);

enum class BasisStatus : std::uint8_t { kBasic, kAtLower, kAtUpper };

/// Status of every structural variable and every row's logical variable.
struct LpBasis {
  std::vector<BasisStatus> vars;
  std::vector<BasisStatus> rows;

  bool empty() const { return vars.empty() && rows.empty(); }
  friend bool operator==(const LpBasis&, const LpBasis&) = default;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::vector<double> duals;         // one per row, for the stated sense
  std::vector<double> activity;      // a_i x per row
  LpBasis basis;
  double infeasibility = 0.0;        // phase-1 sum when infeasible
  std::string certificate;
  int iterations = 0;
};

struct LpOptions {
  double feasibility_tol = 1e-7;
  double pivot_tol = 1e-9;
  double optimality_tol = 1e-9;
  int refactor_interval = 64;
  int bland_after_degenerate = 1000;
  int max_iterations = 200000;
};

/// Bounded-variable revised simplex on [A | -I](x, s) = 0 with a dense
/// basis inverse. Every row gets a logical s_i = a_i x whose bounds encode
/// the row sense.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LpProblem& problem, LpOptions options = {});

  LpSolution solve();
  /// Warm start. Rows beyond the basis' row count start with basic logicals.
  LpSolution solve(const LpBasis& warm);

  int num_structural() const { return n_; }
  int num_rows() const { return m_; }
  /// Variable index at basis position r (structural j, or n + i for row i).
  int basic_variable(int r) const { return head_[static_cast<std::size_t>(r)]; }
  /// Row r of B^-1 [A | -I], length n + m.
  Eigen::VectorXd tableau_row(int r) const;
  double value(int var) const { return z_[static_cast<std::size_t>(var)]; }
  double lower(int var) const { return lb_[static_cast<std::size_t>(var)]; }
  double upper(int var) const { return ub_[static_cast<std::size_t>(var)]; }
  BasisStatus status(int var) const { return stat_[static_cast<std::size_t>(var)]; }
  /// Coefficient of structural j in row i, summed over duplicates.
  double coefficient(int row, int j) const;

 private:
  enum class StepResult { kMoved, kOptimal, kStalled };

  LpSolution run();
  void refactor();
  void compute_basics();
  double column_dot(const Eigen::VectorXd& y, int j) const;
  Eigen::VectorXd binv_column(int j) const;
  StepResult step(bool phase1);
  double infeasibility_sum() const;
  LpSolution make_solution(LpStatus status);

  const LpProblem& problem_;
  LpOptions opt_;
  int n_ = 0;
  int m_ = 0;
  bool trivially_infeasible_ = false;
  std::string infeasible_reason_;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  std::vector<double> cost_;
  std::vector<double> lb_;
  std::vector<double> ub_;
  std::vector<int> head_;
  std::vector<int> pos_;
  std::vector<BasisStatus> stat_;
  std::vector<double> z_;
  Eigen::MatrixXd binv_;
  int since_refactor_ = 0;
  int degenerate_ = 0;
  bool bland_ = false;
  int iterations_ = 0;
};

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options = {});

/// Re-solve a modified problem from a basis of an earlier solve.
LpSolution reoptimize(const LpProblem& problem, const LpBasis& warm, const LpOptions& options = {});

}  // namespace fdran
