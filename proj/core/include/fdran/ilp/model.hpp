// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fdran/lp/problem.hpp"

namespace fdran {

using CoopMask = std::uint32_t;

struct CoopSet {
  CoopMask mask = 0;
  int size = 0;

  friend bool operator==(const CoopSet&, const CoopSet&) = default;
};

/// All nonempty subsets of M BSs ordered by (size, mask).
std::vector<CoopSet> enumerate_coop_sets(int m);

/// One light-load user: demand and per-set rates indexed by mask - 1.
struct LightUser {
  int user_id = 0;
  std::int64_t demand = 0;                // R^d, bits/s
  std::vector<std::int64_t> rates;        // R^1 per cooperation set, bits/s
};

enum class VarKind : std::uint8_t { kSelect, kAlloc };  // delta, o

struct IlpVariable {
  VarKind kind = VarKind::kSelect;
  int user = 0;       // position in the user list
  int set = 0;        // position in the ordered coop-set list
  double lower = 0.0;
  double upper = 0.0;
};

enum class RowKind : std::uint8_t { kCapacity, kLinking, kCompatibility, kAtMostOne, kDemand };

std::string_view to_string(RowKind k);

struct IlpRow {
  RowKind kind = RowKind::kCapacity;
  LinearRow row;
};

/// Light-load integer program. Variable j = set * N + n is delta_{B,n} and
/// J + j is o_{B,n}, with J = (2^M - 1) N.
struct IlpModel {
  int m = 0;
  std::int64_t k = 0;
  double power = 1.0;
  double lambda_config = 0.0;
  double lambda = 0.0;  // effective big-M
  std::vector<CoopSet> sets;
  std::vector<LightUser> users;
  std::vector<IlpVariable> vars;
  std::vector<IlpRow> rows;
  std::vector<double> objective;

  int num_users() const { return static_cast<int>(users.size()); }
  int num_sets() const { return static_cast<int>(sets.size()); }
  int num_vars() const { return static_cast<int>(vars.size()); }
  int select_index(int set, int user) const { return set * num_users() + user; }
  int alloc_index(int set, int user) const { return num_sets() * num_users() + set * num_users() + user; }
  int set_position(CoopMask mask) const;
  std::int64_t rate(int set, int user) const;

  /// One row per line: "<kind> <sense> <rhs> : j:a ...".
  std::string dump() const;
  /// Relaxation with demand rows scaled by their largest coefficient.
  LpProblem relaxation() const;
};

struct IntAssignment {
  std::vector<std::int64_t> values;

  friend bool operator==(const IntAssignment&, const IntAssignment&) = default;
  friend auto operator<=>(const IntAssignment&, const IntAssignment&) = default;
};

struct CheckResult {
  bool feasible = false;
  bool bounds_ok = false;
  std::vector<int> violated_rows;
};

/// Throws IncompleteRateMap when a user lacks a rate entry, InvalidArgument when
/// lambda < K.
IlpModel build_ilp(const std::vector<LightUser>& users, int m, std::int64_t k, double power, double lambda);

/// Exact integer check of bounds and every row.
CheckResult check_assignment(const IlpModel& model, const IntAssignment& a);

/// p * sum |B| o_{B,n}.
double energy(const IlpModel& model, const IntAssignment& a);
/// sum |B| o_{B,n} in subcarrier-BS units.
std::int64_t energy_units(const IlpModel& model, const IntAssignment& a);

/// Every user with demand served by JT of all BSs on ceil(R^d / R^1_M) subcarriers.
IntAssignment jt_all_assignment(const IlpModel& model);

/// Per-user (mask, count) segments with count > 0, in ascending set order.
std::vector<std::vector<std::pair<CoopMask, std::int64_t>>> assignment_segments(const IlpModel& model,
                                                                               const IntAssignment& a);

/// Inverse of assignment_segments.
IntAssignment assignment_from_segments(const IlpModel& model,
                                       const std::vector<std::vector<std::pair<CoopMask, std::int64_t>>>& segs);

}  // namespace fdran
