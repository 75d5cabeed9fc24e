// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "fdran/common/error.hpp"
#include "fdran/lp/simplex.hpp"

using namespace fdran;

namespace {

LpProblem random_lp(std::mt19937_64& gen, int n, int m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.1, 3.0);
  LpProblem p;
  for (int j = 0; j < n; ++j) p.add_var(0.0, pos(gen) * 3.0, u(gen));
  for (int i = 0; i < m; ++i) {
    LinearRow r;
    for (int j = 0; j < n; ++j) {
      if (gen() % 3 != 0) r.coefs.emplace_back(j, u(gen));
    }
    r.sense = gen() % 2 == 0 ? Sense::kLe : Sense::kGe;
    // Keep the origin strictly feasible so every instance has an optimum.
    r.rhs = r.sense == Sense::kLe ? pos(gen) : -pos(gen);
    p.rows.push_back(std::move(r));
  }
  return p;
}

// Objective of the Lagrangian dual at the reported multipliers: for a
// minimization, b'y + sum_j min(lb_j r_j, ub_j r_j) with reduced costs r.
double dual_bound(const LpProblem& p, const LpSolution& s) {
  std::vector<double> reduced = p.objective;
  double bound = 0.0;
  for (int i = 0; i < p.num_rows(); ++i) {
    const double y = s.duals[static_cast<std::size_t>(i)];
    bound += y * p.rows[static_cast<std::size_t>(i)].rhs;
    for (const auto& [j, a] : p.rows[static_cast<std::size_t>(i)].coefs) reduced[static_cast<std::size_t>(j)] -= y * a;
  }
  for (int j = 0; j < p.num_vars(); ++j) {
    const double r = reduced[static_cast<std::size_t>(j)];
    bound += std::min(r * p.lower[static_cast<std::size_t>(j)], r * p.upper[static_cast<std::size_t>(j)]);
  }
  return bound;
}

}  // namespace

TEST(Simplex, BoundOnly) {
  LpProblem p;
  p.add_var(2.0, 5.0, 1.0);
  const auto s = solve_lp(p);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[0], 2.0, 1e-12);
  EXPECT_NEAR(s.objective, 2.0, 1e-12);
}

TEST(Simplex, TwoVariableHandSolution) {
  LpProblem p;
  p.add_var(0.0, 2.0, 1.0);
  p.add_var(0.0, 2.0, 2.0);
  p.rows.push_back({{{0, 1.0}, {1, 1.0}}, Sense::kGe, 3.0});
  const auto s = solve_lp(p);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[0], 2.0, 1e-9);
  EXPECT_NEAR(s.x[1], 1.0, 1e-9);
  EXPECT_NEAR(s.objective, 4.0, 1e-9);
}

TEST(Simplex, Infeasible) {
  LpProblem p;
  p.add_var(0.0, 2.0, 1.0);
  p.rows.push_back({{{0, 1.0}}, Sense::kGe, 3.0});
  const auto s = solve_lp(p);
  EXPECT_EQ(s.status, LpStatus::kInfeasible);
  EXPECT_FALSE(s.certificate.empty());
}

TEST(Simplex, BadBounds) {
  LpProblem p;
  p.add_var(3.0, 2.0, 1.0);
  try {
    solve_lp(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadBounds);
  }
}

TEST(Simplex, EqualityAndMaximize) {
  LpProblem p;
  p.maximize = true;
  p.add_var(0.0, 10.0, 3.0);
  p.add_var(0.0, 10.0, 2.0);
  p.rows.push_back({{{0, 1.0}, {1, 1.0}}, Sense::kEq, 4.0});
  p.rows.push_back({{{0, 1.0}, {1, -1.0}}, Sense::kLe, 1.0});
  const auto s = solve_lp(p);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[0], 2.5, 1e-9);
  EXPECT_NEAR(s.x[1], 1.5, 1e-9);
  EXPECT_NEAR(s.objective, 10.5, 1e-9);
}

TEST(Simplex, RandomInstancesFeasibleAndDualMatched) {
  std::mt19937_64 gen(99);
  for (int t = 0; t < 100; ++t) {
    const auto p = random_lp(gen, 3 + static_cast<int>(gen() % 8), 2 + static_cast<int>(gen() % 8));
    const auto s = solve_lp(p);
    ASSERT_EQ(s.status, LpStatus::kOptimal);
    double obj = 0.0;
    for (int j = 0; j < p.num_vars(); ++j) {
      const double x = s.x[static_cast<std::size_t>(j)];
      EXPECT_GE(x, p.lower[static_cast<std::size_t>(j)] - 1e-7);
      EXPECT_LE(x, p.upper[static_cast<std::size_t>(j)] + 1e-7);
      obj += p.objective[static_cast<std::size_t>(j)] * x;
    }
    for (const auto& r : p.rows) {
      const double a = r.activity(s.x);
      if (r.sense == Sense::kLe) EXPECT_LE(a, r.rhs + 1e-7);
      if (r.sense == Sense::kGe) EXPECT_GE(a, r.rhs - 1e-7);
    }
    EXPECT_NEAR(obj, s.objective, 1e-7);
    EXPECT_NEAR(dual_bound(p, s), s.objective, 1e-6) << "instance " << t;
  }
}

TEST(Simplex, WarmStartMatchesColdSolve) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int seq = 0; seq < 200; ++seq) {
    auto p = random_lp(gen, 4 + static_cast<int>(gen() % 5), 3 + static_cast<int>(gen() % 4));
    auto s = solve_lp(p);
    ASSERT_EQ(s.status, LpStatus::kOptimal);
    for (int step = 0; step < 3; ++step) {
      if (gen() % 2 == 0) {
        const auto j = static_cast<std::size_t>(gen() % static_cast<std::uint64_t>(p.num_vars()));
        p.upper[j] = std::max(p.lower[j], s.x[j] - 0.5);
      } else {
        LinearRow r;
        for (int j = 0; j < p.num_vars(); ++j) r.coefs.emplace_back(j, u(gen));
        r.sense = Sense::kLe;
        r.rhs = r.activity(s.x) - 0.1;
        p.rows.push_back(std::move(r));
      }
      const auto warm = reoptimize(p, s.basis);
      const auto cold = solve_lp(p);
      ASSERT_EQ(warm.status, cold.status) << seq;
      if (cold.status != LpStatus::kOptimal) break;
      EXPECT_NEAR(warm.objective, cold.objective, 1e-9 * std::max(1.0, std::fabs(cold.objective)));
      s = warm;
    }
  }
}

TEST(Simplex, ReoptimizeNoOpAndMonotone) {
  LpProblem p;
  p.add_var(0.0, 4.0, 1.0);
  p.add_var(0.0, 4.0, 1.0);
  p.rows.push_back({{{0, 1.0}, {1, 2.0}}, Sense::kGe, 3.0});
  const auto s = solve_lp(p);
  const auto same = reoptimize(p, s.basis);
  EXPECT_EQ(same.x, s.x);
  auto q = p;
  q.rows.push_back({{{0, 1.0}}, Sense::kLe, 100.0});
  EXPECT_NEAR(reoptimize(q, s.basis).objective, s.objective, 1e-12);
  auto t = p;
  t.upper[1] = 1.0;
  EXPECT_GE(reoptimize(t, s.basis).objective, s.objective - 1e-12);
}

TEST(Simplex, DegenerateProblemTerminates) {
  // Many redundant rows through the same vertex.
  LpProblem p;
  for (int j = 0; j < 6; ++j) p.add_var(0.0, 1.0, -1.0);
  for (int i = 0; i < 30; ++i) {
    LinearRow r;
    for (int j = 0; j < 6; ++j) r.coefs.emplace_back(j, 1.0 + (i + j) % 3);
    r.sense = Sense::kLe;
    r.rhs = 0.0;
    p.rows.push_back(std::move(r));
  }
  const auto s = solve_lp(p);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, 0.0, 1e-9);
}

TEST(Simplex, Deterministic) {
  std::mt19937_64 gen(5);
  const auto p = random_lp(gen, 8, 6);
  const auto a = solve_lp(p);
  const auto b = solve_lp(p);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.basis, b.basis);
}
