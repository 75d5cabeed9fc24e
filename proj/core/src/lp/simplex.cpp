// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/lp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fdran/common/error.hpp"

namespace fdran {

std::string_view to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kIterationLimit: return "iteration-limit";
  }
  return "?";
}

SimplexSolver::SimplexSolver(const LpProblem& problem, LpOptions options) : problem_(problem), opt_(options) {
  problem_.validate();
  n_ = problem_.num_vars();
  m_ = problem_.num_rows();
  const auto total = static_cast<std::size_t>(n_ + m_);
  cols_.assign(static_cast<std::size_t>(n_), {});
  cost_.assign(total, 0.0);
  lb_.assign(total, 0.0);
  ub_.assign(total, 0.0);
  for (int j = 0; j < n_; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    cost_[uj] = problem_.maximize ? -problem_.objective[uj] : problem_.objective[uj];
    lb_[uj] = problem_.lower[uj];
    ub_[uj] = problem_.upper[uj];
  }
  for (int i = 0; i < m_; ++i) {
    const LinearRow& row = problem_.rows[static_cast<std::size_t>(i)];
    double lo = 0.0, hi = 0.0;
    for (const auto& [j, a] : row.coefs) {
      if (a == 0.0) continue;
      cols_[static_cast<std::size_t>(j)].emplace_back(i, a);
      const double l = problem_.lower[static_cast<std::size_t>(j)];
      const double u = problem_.upper[static_cast<std::size_t>(j)];
      lo += std::min(a * l, a * u);
      hi += std::max(a * l, a * u);
    }
    // Logical bounds: the row range intersected with the implied activity range.
    const double tol = opt_.feasibility_tol * std::max(1.0, std::fabs(row.rhs));
    double sl = lo, su = hi;
    if (row.sense == Sense::kLe || row.sense == Sense::kEq) su = row.rhs;
    if (row.sense == Sense::kGe || row.sense == Sense::kEq) sl = row.rhs;
    if (sl > hi + tol || su < lo - tol) {
      trivially_infeasible_ = true;
      std::ostringstream os;
      os << "row " << i << " needs activity in [" << sl << ", " << su << "] but bounds allow [" << lo << ", " << hi
         << "]";
      infeasible_reason_ = os.str();
    }
    if (row.sense == Sense::kLe) sl = std::min(lo, su);
    if (row.sense == Sense::kGe) su = std::max(hi, sl);
    lb_[static_cast<std::size_t>(n_ + i)] = sl;
    ub_[static_cast<std::size_t>(n_ + i)] = su;
  }
}

double SimplexSolver::coefficient(int row, int j) const {
  double s = 0.0;
  for (const auto& [i, a] : cols_[static_cast<std::size_t>(j)]) {
    if (i == row) s += a;
  }
  return s;
}

double SimplexSolver::column_dot(const Eigen::VectorXd& y, int j) const {
  if (j >= n_) return -y(j - n_);
  double s = 0.0;
  for (const auto& [i, a] : cols_[static_cast<std::size_t>(j)]) s += a * y(i);
  return s;
}

Eigen::VectorXd SimplexSolver::binv_column(int j) const {
  if (j >= n_) return -binv_.col(j - n_);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m_);
  for (const auto& [i, a] : cols_[static_cast<std::size_t>(j)]) v.noalias() += a * binv_.col(i);
  return v;
}

Eigen::VectorXd SimplexSolver::tableau_row(int r) const {
  const Eigen::VectorXd rho = binv_.row(r).transpose();
  Eigen::VectorXd out(n_ + m_);
  for (int j = 0; j < n_ + m_; ++j) out(j) = column_dot(rho, j);
  return out;
}

// B = [A_S | -I_L] after permuting rows. With K = A(R2, S), where R2 are rows
// whose logical is nonbasic, B^-1 follows from K^-1 without touching the
// identity part.
void SimplexSolver::refactor() {
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<int> s_pos, r2;
    std::vector<char> logical_basic(static_cast<std::size_t>(m_), 0);
    for (int r = 0; r < m_; ++r) {
      const int v = head_[static_cast<std::size_t>(r)];
      if (v < n_) {
        s_pos.push_back(r);
      } else {
        logical_basic[static_cast<std::size_t>(v - n_)] = 1;
      }
    }
    std::vector<int> row_map(static_cast<std::size_t>(m_), -1);
    for (int i = 0; i < m_; ++i) {
      if (!logical_basic[static_cast<std::size_t>(i)]) {
        row_map[static_cast<std::size_t>(i)] = static_cast<int>(r2.size());
        r2.push_back(i);
      }
    }
    const int k = static_cast<int>(s_pos.size());
    Eigen::MatrixXd kmat = Eigen::MatrixXd::Zero(k, k);
    for (int c = 0; c < k; ++c) {
      const int j = head_[static_cast<std::size_t>(s_pos[static_cast<std::size_t>(c)])];
      for (const auto& [i, a] : cols_[static_cast<std::size_t>(j)]) {
        const int rr = row_map[static_cast<std::size_t>(i)];
        if (rr >= 0) kmat(rr, c) += a;
      }
    }
    Eigen::MatrixXd kinv;
    bool ok = true;
    if (k > 0) {
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(kmat);
      kinv = lu.inverse();
      const double err = (kmat * kinv - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
      ok = std::isfinite(err) && err < 1e-9;
    }
    if (!ok) {
      // Replace dependent structural columns with logicals of uncovered rows.
      Eigen::FullPivLU<Eigen::MatrixXd> full(kmat);
      full.setThreshold(1e-11);
      const int rank = static_cast<int>(full.rank());
      const auto& pc = full.permutationQ().indices();
      const auto& pr = full.permutationP().indices();
      std::vector<int> free_rows;
      for (int t = rank; t < k; ++t) free_rows.push_back(r2[static_cast<std::size_t>(pr(t))]);
      for (int t = rank; t < k; ++t) {
        const int bpos = s_pos[static_cast<std::size_t>(pc(t))];
        const int j = head_[static_cast<std::size_t>(bpos)];
        stat_[static_cast<std::size_t>(j)] = BasisStatus::kAtLower;
        pos_[static_cast<std::size_t>(j)] = -1;
        const int logical = n_ + free_rows[static_cast<std::size_t>(t - rank)];
        head_[static_cast<std::size_t>(bpos)] = logical;
        pos_[static_cast<std::size_t>(logical)] = bpos;
        stat_[static_cast<std::size_t>(logical)] = BasisStatus::kBasic;
      }
      continue;
    }
    binv_ = Eigen::MatrixXd::Zero(m_, m_);
    for (int c = 0; c < k; ++c) {
      const int bpos = s_pos[static_cast<std::size_t>(c)];
      for (int t = 0; t < k; ++t) binv_(bpos, r2[static_cast<std::size_t>(t)]) = kinv(c, t);
    }
    // Logical rows: w_logical(i) = A(i, S) w_S - v_i.
    for (int r = 0; r < m_; ++r) {
      const int v = head_[static_cast<std::size_t>(r)];
      if (v < n_) continue;
      binv_(r, v - n_) = -1.0;
    }
    for (int c = 0; c < k; ++c) {
      const int j = head_[static_cast<std::size_t>(s_pos[static_cast<std::size_t>(c)])];
      for (const auto& [i, a] : cols_[static_cast<std::size_t>(j)]) {
        if (!logical_basic[static_cast<std::size_t>(i)]) continue;
        const int lpos = pos_[static_cast<std::size_t>(n_ + i)];
        for (int t = 0; t < k; ++t) binv_(lpos, r2[static_cast<std::size_t>(t)]) += a * kinv(c, t);
      }
    }
    since_refactor_ = 0;
    return;
  }
  throw Error(ErrorCode::kRankDeficient, "basis repair failed");
}

void SimplexSolver::compute_basics() {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m_);
  for (int j = 0; j < n_ + m_; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    if (stat_[uj] == BasisStatus::kBasic) continue;
    z_[uj] = stat_[uj] == BasisStatus::kAtUpper ? ub_[uj] : lb_[uj];
    if (z_[uj] == 0.0) continue;
    if (j >= n_) {
      v(j - n_) -= z_[uj];
    } else {
      for (const auto& [i, a] : cols_[uj]) v(i) += a * z_[uj];
    }
  }
  const Eigen::VectorXd zb = -(binv_ * v);
  for (int r = 0; r < m_; ++r) z_[static_cast<std::size_t>(head_[static_cast<std::size_t>(r)])] = zb(r);
}

double SimplexSolver::infeasibility_sum() const {
  double s = 0.0;
  for (int r = 0; r < m_; ++r) {
    const auto v = static_cast<std::size_t>(head_[static_cast<std::size_t>(r)]);
    if (z_[v] < lb_[v] - opt_.feasibility_tol) s += lb_[v] - z_[v];
    if (z_[v] > ub_[v] + opt_.feasibility_tol) s += z_[v] - ub_[v];
  }
  return s;
}

SimplexSolver::StepResult SimplexSolver::step(bool phase1) {
  const double ftol = opt_.feasibility_tol;
  Eigen::VectorXd cb(m_);
  for (int r = 0; r < m_; ++r) {
    const auto v = static_cast<std::size_t>(head_[static_cast<std::size_t>(r)]);
    if (phase1) {
      cb(r) = z_[v] < lb_[v] - ftol ? -1.0 : (z_[v] > ub_[v] + ftol ? 1.0 : 0.0);
    } else {
      cb(r) = cost_[v];
    }
  }
  const Eigen::VectorXd y = binv_.transpose() * cb;

  // Pricing.
  int q = -1;
  double best = 0.0;
  int dir = 0;
  for (int j = 0; j < n_ + m_; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    if (stat_[uj] == BasisStatus::kBasic || ub_[uj] - lb_[uj] <= 0.0) continue;
    const double d = (phase1 ? 0.0 : cost_[uj]) - column_dot(y, j);
    int dj = 0;
    if (stat_[uj] == BasisStatus::kAtLower && d < -opt_.optimality_tol) dj = 1;
    if (stat_[uj] == BasisStatus::kAtUpper && d > opt_.optimality_tol) dj = -1;
    if (dj == 0) continue;
    if (bland_) {
      q = j;
      dir = dj;
      break;
    }
    if (std::fabs(d) > best) {
      best = std::fabs(d);
      q = j;
      dir = dj;
    }
  }
  if (q < 0) return StepResult::kOptimal;

  const Eigen::VectorXd alpha = binv_column(q);
  const auto uq = static_cast<std::size_t>(q);
  const double range = ub_[uq] - lb_[uq];

  // Harris two-pass ratio test. rate = d z_B / d t for the entering step.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double theta_max = kInf;
  auto limit = [&](int r, bool relaxed, double& ratio) -> bool {
    const double rate = -dir * alpha(r);
    if (std::fabs(rate) <= opt_.pivot_tol) return false;
    const auto v = static_cast<std::size_t>(head_[static_cast<std::size_t>(r)]);
    const double zv = z_[v];
    const double slack = relaxed ? ftol : 0.0;
    const bool below = phase1 && zv < lb_[v] - ftol;
    const bool above = phase1 && zv > ub_[v] + ftol;
    if (rate > 0.0) {
      if (above) return false;
      const double bound = below ? lb_[v] : ub_[v];
      ratio = (bound + slack - zv) / rate;
    } else {
      if (below) return false;
      const double bound = above ? ub_[v] : lb_[v];
      ratio = (bound - slack - zv) / rate;
    }
    return true;
  };
  int leave = -1;
  if (bland_) {
    double tmin = kInf;
    for (int r = 0; r < m_; ++r) {
      double ratio;
      if (!limit(r, false, ratio)) continue;
      ratio = std::max(ratio, 0.0);
      const int var = head_[static_cast<std::size_t>(r)];
      if (ratio < tmin - 1e-12 || (ratio <= tmin + 1e-12 && leave >= 0 && var < head_[static_cast<std::size_t>(leave)])) {
        tmin = std::min(tmin, ratio);
        leave = r;
      }
    }
    theta_max = tmin;
  } else {
    for (int r = 0; r < m_; ++r) {
      double ratio;
      if (limit(r, true, ratio)) theta_max = std::min(theta_max, std::max(ratio, 0.0));
    }
    double best_rate = 0.0;
    for (int r = 0; r < m_; ++r) {
      double ratio;
      if (!limit(r, false, ratio) || ratio > theta_max) continue;
      if (std::fabs(alpha(r)) > best_rate) {
        best_rate = std::fabs(alpha(r));
        leave = r;
      }
    }
  }

  double t;
  if (leave < 0 || range <= theta_max) {
    if (!std::isfinite(range)) return StepResult::kStalled;
    // Bound flip: the entering variable crosses its own box.
    t = range;
    stat_[uq] = dir > 0 ? BasisStatus::kAtUpper : BasisStatus::kAtLower;
  } else {
    double ratio = 0.0;
    limit(leave, false, ratio);
    t = std::max(ratio, 0.0);
    const int out = head_[static_cast<std::size_t>(leave)];
    const auto uo = static_cast<std::size_t>(out);
    const double rate = -dir * alpha(leave);
    const bool was_below = phase1 && z_[uo] < lb_[uo] - ftol;
    const bool was_above = phase1 && z_[uo] > ub_[uo] + ftol;
    if (rate > 0.0) {
      stat_[uo] = was_below ? BasisStatus::kAtLower : BasisStatus::kAtUpper;
    } else {
      stat_[uo] = was_above ? BasisStatus::kAtUpper : BasisStatus::kAtLower;
    }
    pos_[uo] = -1;
    head_[static_cast<std::size_t>(leave)] = q;
    pos_[uq] = leave;
    stat_[uq] = BasisStatus::kBasic;
    // Product-form update of B^-1.
    const Eigen::RowVectorXd pivot_row = binv_.row(leave) / alpha(leave);
    binv_.noalias() -= alpha * pivot_row;
    binv_.row(leave) = pivot_row;
    ++since_refactor_;
  }
  if (t <= 1e-12) {
    if (++degenerate_ >= opt_.bland_after_degenerate) bland_ = true;
  }
  return StepResult::kMoved;
}

LpSolution SimplexSolver::run() {
  iterations_ = 0;
  if (trivially_infeasible_) {
    LpSolution s = make_solution(LpStatus::kInfeasible);
    s.certificate = infeasible_reason_;
    s.infeasibility = 1.0;
    return s;
  }
  refactor();
  compute_basics();
  bool phase1 = infeasibility_sum() > 0.0;
  while (iterations_ < opt_.max_iterations) {
    if (since_refactor_ >= opt_.refactor_interval) refactor();
    const StepResult res = step(phase1);
    ++iterations_;
    compute_basics();
    if (res == StepResult::kOptimal || res == StepResult::kStalled) {
      if (phase1) {
        const double inf = infeasibility_sum();
        if (inf > 0.0) {
          LpSolution s = make_solution(LpStatus::kInfeasible);
          s.infeasibility = inf;
          std::ostringstream os;
          os << "phase-1 optimum leaves infeasibility " << inf << " on basic variables:";
          for (int r = 0; r < m_; ++r) {
            const int v = head_[static_cast<std::size_t>(r)];
            const auto uv = static_cast<std::size_t>(v);
            if (z_[uv] < lb_[uv] - opt_.feasibility_tol || z_[uv] > ub_[uv] + opt_.feasibility_tol) {
              os << (v < n_ ? " x" : " row") << (v < n_ ? v : v - n_);
            }
          }
          s.certificate = os.str();
          return s;
        }
        phase1 = false;
        degenerate_ = 0;
        bland_ = false;
        continue;
      }
      // Re-check feasibility after a fresh factorization before declaring optimality.
      refactor();
      compute_basics();
      if (infeasibility_sum() > 0.0) {
        phase1 = true;
        continue;
      }
      return make_solution(LpStatus::kOptimal);
    }
    if (!phase1 && infeasibility_sum() > 0.0) phase1 = true;
    if (phase1 && infeasibility_sum() == 0.0) {
      phase1 = false;
      degenerate_ = 0;
      bland_ = false;
    }
  }
  return make_solution(LpStatus::kIterationLimit);
}

LpSolution SimplexSolver::make_solution(LpStatus status) {
  LpSolution s;
  s.status = status;
  s.iterations = iterations_;
  s.x.assign(static_cast<std::size_t>(n_), 0.0);
  s.basis.vars.resize(static_cast<std::size_t>(n_));
  s.basis.rows.resize(static_cast<std::size_t>(m_));
  if (trivially_infeasible_) return s;
  for (int j = 0; j < n_; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    // Snap to bounds within tolerance so vertex values are exact.
    double v = z_[uj];
    if (std::fabs(v - lb_[uj]) <= 1e-11) v = lb_[uj];
    if (std::fabs(v - ub_[uj]) <= 1e-11) v = ub_[uj];
    s.x[uj] = std::clamp(v, lb_[uj], ub_[uj]);
    s.basis.vars[uj] = stat_[uj];
  }
  for (int i = 0; i < m_; ++i) s.basis.rows[static_cast<std::size_t>(i)] = stat_[static_cast<std::size_t>(n_ + i)];
  s.objective = 0.0;
  for (int j = 0; j < n_; ++j) s.objective += problem_.objective[static_cast<std::size_t>(j)] * s.x[static_cast<std::size_t>(j)];
  s.activity.resize(static_cast<std::size_t>(m_));
  for (int i = 0; i < m_; ++i) s.activity[static_cast<std::size_t>(i)] = problem_.rows[static_cast<std::size_t>(i)].activity(s.x);
  if (status == LpStatus::kOptimal) {
    Eigen::VectorXd cb(m_);
    for (int r = 0; r < m_; ++r) cb(r) = cost_[static_cast<std::size_t>(head_[static_cast<std::size_t>(r)])];
    const Eigen::VectorXd y = binv_.transpose() * cb;
    s.duals.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) s.duals[static_cast<std::size_t>(i)] = problem_.maximize ? -y(i) : y(i);
  }
  return s;
}

LpSolution SimplexSolver::solve() {
  const auto total = static_cast<std::size_t>(n_ + m_);
  stat_.assign(total, BasisStatus::kAtLower);
  pos_.assign(total, -1);
  head_.assign(static_cast<std::size_t>(m_), 0);
  z_.assign(total, 0.0);
  for (int i = 0; i < m_; ++i) {
    head_[static_cast<std::size_t>(i)] = n_ + i;
    pos_[static_cast<std::size_t>(n_ + i)] = i;
    stat_[static_cast<std::size_t>(n_ + i)] = BasisStatus::kBasic;
  }
  degenerate_ = 0;
  bland_ = false;
  return run();
}

LpSolution SimplexSolver::solve(const LpBasis& warm) {
  if (warm.empty()) return solve();
  if (warm.vars.size() != static_cast<std::size_t>(n_) || warm.rows.size() > static_cast<std::size_t>(m_)) {
    throw Error(ErrorCode::kDimensionMismatch, "warm-start basis does not match the problem");
  }
  const auto total = static_cast<std::size_t>(n_ + m_);
  stat_.assign(total, BasisStatus::kAtLower);
  pos_.assign(total, -1);
  z_.assign(total, 0.0);
  for (int j = 0; j < n_; ++j) stat_[static_cast<std::size_t>(j)] = warm.vars[static_cast<std::size_t>(j)];
  for (int i = 0; i < m_; ++i) {
    stat_[static_cast<std::size_t>(n_ + i)] =
        static_cast<std::size_t>(i) < warm.rows.size() ? warm.rows[static_cast<std::size_t>(i)] : BasisStatus::kBasic;
  }
  head_.clear();
  for (int v = 0; v < n_ + m_; ++v) {
    if (stat_[static_cast<std::size_t>(v)] == BasisStatus::kBasic) head_.push_back(v);
  }
  // Too many basics: demote structurals from the end. Too few: promote logicals.
  for (int v = n_ - 1; static_cast<int>(head_.size()) > m_ && v >= 0; --v) {
    if (stat_[static_cast<std::size_t>(v)] == BasisStatus::kBasic) {
      stat_[static_cast<std::size_t>(v)] = BasisStatus::kAtLower;
      head_.erase(std::find(head_.begin(), head_.end(), v));
    }
  }
  for (int i = 0; static_cast<int>(head_.size()) < m_ && i < m_; ++i) {
    if (stat_[static_cast<std::size_t>(n_ + i)] != BasisStatus::kBasic) {
      stat_[static_cast<std::size_t>(n_ + i)] = BasisStatus::kBasic;
      head_.push_back(n_ + i);
    }
  }
  std::sort(head_.begin(), head_.end());
  for (int r = 0; r < m_; ++r) pos_[static_cast<std::size_t>(head_[static_cast<std::size_t>(r)])] = r;
  degenerate_ = 0;
  bland_ = false;
  return run();
}

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options) {
  SimplexSolver s(problem, options);
  return s.solve();
}

LpSolution reoptimize(const LpProblem& problem, const LpBasis& warm, const LpOptions& options) {
  SimplexSolver s(problem, options);
  return s.solve(warm);
}

}  // namespace fdran
