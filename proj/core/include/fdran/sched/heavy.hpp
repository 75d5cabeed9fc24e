// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace fdran {

struct UserDemand {
  int user_id = 0;
  double weight = 0.0;
  std::int64_t demand_rate = 0;          // R^d, bits/s
  std::int64_t rate_per_subcarrier = 0;  // R^1 under JT of all BSs, bits/s

  /// K^d = ceil(R^d / R^1).
  std::int64_t required_subcarriers() const;
  /// Throws InvalidArgument unless weight > 0, R^d > 0 and R^1 > 0.
  void validate() const;
};

struct GreedyWeights {
  double head = 0.0;  // units 1 .. K^d - 1
  double tail = 0.0;  // unit K^d
};

struct GreedySegment {
  int user_id = 0;
  double weight_per_unit = 0.0;
  std::int64_t units = 0;
};

struct HeavyAllocation {
  std::vector<std::int64_t> subcarriers;  // x_n, same order as the input users
  std::vector<std::int64_t> mandatory;    // k0_n
  std::vector<double> satisfaction;       // eta_n
  double objective = 0.0;                 // V
};

GreedyWeights greedy_weight(const UserDemand& u);

/// eta_n for x allocated units: min(x R^1 / R^d, 1).
double satisfaction_rate(const UserDemand& u, std::int64_t x);

/// k0_n = min(K^d, ceil(eta_min R^d / R^1)). Throws FairnessInfeasible when
/// the mandatory units exceed K.
std::vector<std::int64_t> fairness_preallocate(const std::vector<UserDemand>& users, double eta_min, std::int64_t k);

/// Weighted-satisfaction maximizing allocation of K subcarriers.
HeavyAllocation greedy_schedule(const std::vector<UserDemand>& users, std::int64_t k, double eta_min);

/// Segments in the order the greedy pass consumes them (after pre-allocation).
std::vector<GreedySegment> greedy_segments(const std::vector<UserDemand>& users,
                                           const std::vector<std::int64_t>& mandatory);

}  // namespace fdran
