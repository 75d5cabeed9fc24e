// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/oracle/brute_force.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "fdran/common/error.hpp"

namespace fdran {
namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

void heavy_recurse(const std::vector<UserDemand>& users, std::size_t i, std::int64_t left, double eta_min, double v,
                   std::optional<double>& best) {
  if (i == users.size()) {
    if (!best || v > *best) best = v;
    return;
  }
  const auto& u = users[i];
  for (std::int64_t x = 0; x <= left; ++x) {
    const double eta = satisfaction_rate(u, x);
    if (eta < eta_min) continue;
    heavy_recurse(users, i + 1, left - x, eta_min, v + u.weight * eta, best);
  }
}

bool is_subset(CoopMask a, CoopMask b) { return (a & ~b) == 0; }

/// cost[t]: minimum units for one user using exactly t subcarriers.
std::vector<std::int64_t> user_costs(const IlpModel& model, int user, bool single_bs_only) {
  const auto k = model.k;
  const auto& u = model.users[static_cast<std::size_t>(user)];
  std::vector<std::int64_t> cost(static_cast<std::size_t>(k + 1), kInf);
  if (u.demand <= 0) {
    cost[0] = 0;
    return cost;
  }
  // Chains are strictly nested sets listed from the largest down.
  std::vector<int> chain;
  std::vector<std::int64_t> counts;
  std::function<void(int)> extend;
  auto evaluate = [&](std::size_t pos, std::int64_t used, std::int64_t units, std::int64_t bits,
                      auto&& self) -> void {
    if (pos == chain.size()) {
      if (bits >= u.demand) cost[static_cast<std::size_t>(used)] = std::min(cost[static_cast<std::size_t>(used)], units);
      return;
    }
    const int s = chain[pos];
    const auto rate = model.rate(s, user);
    const int size = model.sets[static_cast<std::size_t>(s)].size;
    for (std::int64_t o = 1; used + o <= k; ++o) {
      self(pos + 1, used + o, units + size * o, bits + rate * o, self);
    }
  };
  extend = [&](int last) {
    if (!chain.empty()) evaluate(0, 0, 0, 0, evaluate);
    if (single_bs_only && !chain.empty()) return;
    for (int s = 0; s < model.num_sets(); ++s) {
      const auto& set = model.sets[static_cast<std::size_t>(s)];
      if (single_bs_only && set.size != 1) continue;
      if (last >= 0) {
        const auto& prev = model.sets[static_cast<std::size_t>(last)];
        if (set.size >= prev.size || !is_subset(set.mask, prev.mask)) continue;
      }
      chain.push_back(s);
      extend(s);
      chain.pop_back();
    }
  };
  extend(-1);
  return cost;
}

std::optional<std::int64_t> knapsack(const IlpModel& model, bool single_bs_only) {
  const auto k = model.k;
  std::vector<std::int64_t> dp(static_cast<std::size_t>(k + 1), kInf);
  dp[0] = 0;
  for (int n = 0; n < model.num_users(); ++n) {
    const auto cost = user_costs(model, n, single_bs_only);
    std::vector<std::int64_t> next(dp.size(), kInf);
    for (std::int64_t a = 0; a <= k; ++a) {
      if (dp[static_cast<std::size_t>(a)] >= kInf) continue;
      for (std::int64_t t = 0; a + t <= k; ++t) {
        const auto c = cost[static_cast<std::size_t>(t)];
        if (c >= kInf) continue;
        auto& slot = next[static_cast<std::size_t>(a + t)];
        slot = std::min(slot, dp[static_cast<std::size_t>(a)] + c);
      }
    }
    dp = std::move(next);
  }
  const auto best = *std::min_element(dp.begin(), dp.end());
  if (best >= kInf) return std::nullopt;
  return best;
}

}  // namespace

std::optional<double> heavy_enumeration_optimum(const std::vector<UserDemand>& users, std::int64_t k,
                                                double eta_min) {
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "negative K");
  std::optional<double> best;
  heavy_recurse(users, 0, k, eta_min, 0.0, best);
  return best;
}

std::optional<std::int64_t> light_enumeration_optimum(const IlpModel& model) { return knapsack(model, false); }

std::optional<std::int64_t> best_single_bs_units(const IlpModel& model) { return knapsack(model, true); }

}  // namespace fdran
