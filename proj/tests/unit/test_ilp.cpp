// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <bit>
#include <set>

#include "fdran/common/error.hpp"
#include "fdran/ilp/model.hpp"
#include "oracles.hpp"

using namespace fdran;

namespace {

int count_rows(const IlpModel& m, RowKind kind) {
  int n = 0;
  for (const auto& r : m.rows) n += r.kind == kind;
  return n;
}

std::vector<LightUser> one_user(int m, std::int64_t demand, std::int64_t rate) {
  return {{0, demand, std::vector<std::int64_t>(static_cast<std::size_t>((1 << m) - 1), rate)}};
}

}  // namespace

TEST(CoopSets, Enumeration) {
  ASSERT_EQ(enumerate_coop_sets(1).size(), 1u);
  const auto two = enumerate_coop_sets(2);
  ASSERT_EQ(two.size(), 3u);
  EXPECT_EQ(two[0].mask, 1u);
  EXPECT_EQ(two[1].mask, 2u);
  EXPECT_EQ(two[2].mask, 3u);
  const auto three = enumerate_coop_sets(3);
  std::vector<CoopMask> pairs;
  for (const auto& s : three) {
    EXPECT_EQ(s.size, std::popcount(s.mask));
    if (s.size == 2) pairs.push_back(s.mask);
  }
  // {1,2}, {1,3}, {2,3} as bitmasks.
  EXPECT_EQ(pairs, (std::vector<CoopMask>{0b011, 0b101, 0b110}));
}

TEST(BuildIlp, SingleBsSingleUserShape) {
  const auto m = build_ilp(one_user(1, 100, 10), 1, 20, 1.0, 1000.0);
  EXPECT_EQ(m.num_vars(), 2);
  EXPECT_EQ(count_rows(m, RowKind::kCapacity), 1);
  EXPECT_EQ(count_rows(m, RowKind::kLinking), 1);
  EXPECT_EQ(count_rows(m, RowKind::kCompatibility), 0);
  EXPECT_EQ(count_rows(m, RowKind::kAtMostOne), 1);
  EXPECT_EQ(count_rows(m, RowKind::kDemand), 1);
  EXPECT_DOUBLE_EQ(m.lambda, 20.0);
  EXPECT_DOUBLE_EQ(m.lambda_config, 1000.0);
}

TEST(BuildIlp, CompatibilityRowCountMatchesSubsetEnumeration) {
  for (int bs = 1; bs <= 4; ++bs) {
    const auto model = build_ilp(one_user(bs, 100, 10), bs, 20, 1.0, 1000.0);
    EXPECT_EQ(model.num_vars(), 2 * ((1 << bs) - 1));
    int expect = 0;
    for (unsigned b = 1; b < (1u << bs); ++b) {
      for (unsigned bp = 1; bp < (1u << bs); ++bp) {
        if (std::popcount(bp) < std::popcount(b) && (bp & ~b) != 0) ++expect;
      }
    }
    EXPECT_EQ(count_rows(model, RowKind::kCompatibility), expect) << "M=" << bs;
    EXPECT_EQ(count_rows(model, RowKind::kAtMostOne), bs);
  }
}

TEST(BuildIlp, EveryNonNestedPairIsExcluded) {
  // For M = 3 there are 9 unordered pairs of sets where neither contains the
  // other; each must be ruled out by a compatibility row (different sizes)
  // or an at-most-one row (same size).
  const auto model = build_ilp(one_user(3, 100, 10), 3, 20, 1.0, 1000.0);
  std::set<std::pair<CoopMask, CoopMask>> excluded;
  for (const auto& r : model.rows) {
    std::vector<CoopMask> masks;
    for (const auto& [j, c] : r.row.coefs) {
      if (j < model.num_sets() * model.num_users()) masks.push_back(model.sets[static_cast<std::size_t>(j)].mask);
    }
    if (r.kind != RowKind::kCompatibility && r.kind != RowKind::kAtMostOne) continue;
    for (auto a : masks) {
      for (auto b : masks) {
        if (a < b) excluded.insert({a, b});
      }
    }
  }
  int non_nested = 0;
  for (CoopMask a = 1; a < 8; ++a) {
    for (CoopMask b = a + 1; b < 8; ++b) {
      if ((a & b) != a && (a & b) != b) {
        ++non_nested;
        EXPECT_TRUE(excluded.count({a, b})) << a << " " << b;
      }
    }
  }
  EXPECT_EQ(non_nested, 9);
  EXPECT_EQ(count_rows(model, RowKind::kCompatibility), 3);
}

TEST(BuildIlp, ObjectiveAndBounds) {
  const auto model = build_ilp(one_user(3, 100, 10), 3, 12, 2.0, 1000.0);
  for (int s = 0; s < model.num_sets(); ++s) {
    EXPECT_DOUBLE_EQ(model.objective[static_cast<std::size_t>(model.select_index(s, 0))], 0.0);
    EXPECT_DOUBLE_EQ(model.objective[static_cast<std::size_t>(model.alloc_index(s, 0))], 2.0 * model.sets[s].size);
    EXPECT_DOUBLE_EQ(model.vars[static_cast<std::size_t>(model.select_index(s, 0))].upper, 1.0);
    EXPECT_DOUBLE_EQ(model.vars[static_cast<std::size_t>(model.alloc_index(s, 0))].upper, 12.0);
  }
}

TEST(BuildIlp, Preconditions) {
  EXPECT_THROW(build_ilp(one_user(2, 100, 10), 2, 20, 1.0, 10.0), Error);
  std::vector<LightUser> bad{{0, 100, {10, 10}}};
  try {
    build_ilp(bad, 2, 20, 1.0, 1000.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIncompleteRateMap);
  }
}

TEST(BuildIlp, DumpIsStable) {
  const auto a = build_ilp(one_user(2, 100, 10), 2, 8, 1.0, 1000.0);
  const auto b = build_ilp(one_user(2, 100, 10), 2, 8, 1.0, 1000.0);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_NE(a.dump().find("capacity"), std::string::npos);
}

TEST(CheckAssignment, Verdicts) {
  const auto model = build_ilp(one_user(2, 100, 10), 2, 20, 1.0, 1000.0);
  IntAssignment zero{std::vector<std::int64_t>(static_cast<std::size_t>(model.num_vars()), 0)};
  auto r = check_assignment(model, zero);
  EXPECT_FALSE(r.feasible);
  ASSERT_EQ(r.violated_rows.size(), 1u);
  EXPECT_EQ(model.rows[static_cast<std::size_t>(r.violated_rows[0])].kind, RowKind::kDemand);

  const auto jt = jt_all_assignment(model);
  EXPECT_TRUE(check_assignment(model, jt).feasible);
  EXPECT_EQ(energy_units(model, jt), 2 * 10);

  auto orphan = zero;
  orphan.values[static_cast<std::size_t>(model.alloc_index(0, 0))] = 10;
  r = check_assignment(model, orphan);
  EXPECT_FALSE(r.feasible);
  bool linking = false;
  for (int i : r.violated_rows) linking |= model.rows[static_cast<std::size_t>(i)].kind == RowKind::kLinking;
  EXPECT_TRUE(linking);

  auto out_of_box = jt;
  out_of_box.values[static_cast<std::size_t>(model.alloc_index(2, 0))] = 21;
  r = check_assignment(model, out_of_box);
  EXPECT_FALSE(r.bounds_ok);
}

TEST(Energy, Values) {
  const auto model = build_ilp(one_user(3, 100, 10), 3, 20, 1.0, 1000.0);
  IntAssignment a{std::vector<std::int64_t>(static_cast<std::size_t>(model.num_vars()), 0)};
  EXPECT_DOUBLE_EQ(energy(model, a), 0.0);
  const int set = model.set_position(0b101);
  a.values[static_cast<std::size_t>(model.select_index(set, 0))] = 1;
  a.values[static_cast<std::size_t>(model.alloc_index(set, 0))] = 5;
  EXPECT_DOUBLE_EQ(energy(model, a), 10.0);
}

TEST(Chains, FeasiblePointsSelectNestedSets) {
  // Every feasible point of a toy model selects a chain under inclusion.
  const auto model = build_ilp({{0, 10, {5, 4, 9}}}, 2, 3, 1.0, 1000.0);
  const auto pts = oracle::enumerate_feasible(model);
  ASSERT_FALSE(pts.empty());
  for (const auto& x : pts) {
    std::vector<CoopMask> chosen;
    for (int s = 0; s < model.num_sets(); ++s) {
      if (x[static_cast<std::size_t>(model.select_index(s, 0))] == 1) chosen.push_back(model.sets[s].mask);
    }
    for (auto a : chosen) {
      for (auto b : chosen) EXPECT_TRUE((a & b) == a || (a & b) == b);
    }
  }
}

TEST(Segments, RoundTripPreservesEnergy) {
  const auto model = build_ilp({{0, 14, {5, 4, 9}}, {1, 12, {3, 6, 7}}}, 2, 5, 1.0, 1000.0);
  for (const auto& x : oracle::enumerate_feasible(model)) {
    const IntAssignment a{x};
    const auto segs = assignment_segments(model, a);
    const auto back = assignment_from_segments(model, segs);
    EXPECT_EQ(energy_units(model, back), energy_units(model, a));
    EXPECT_TRUE(check_assignment(model, back).feasible);
  }
}
