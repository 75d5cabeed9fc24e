// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fdran/ilp/model.hpp"
#include "fdran/sched/heavy.hpp"

namespace fdran {

/// Maximum V over every integer split with sum <= K meeting eta_min, or
/// nullopt when no split satisfies the fairness floor. Exponential; keep N*K small.
std::optional<double> heavy_enumeration_optimum(const std::vector<UserDemand>& users, std::int64_t k,
                                                double eta_min);

/// Minimum energy units (sum of |B| * o) over chain-respecting assignments,
/// or nullopt when none fits in K. Per-user chains are enumerated and combined
/// with a knapsack over subcarriers.
std::optional<std::int64_t> light_enumeration_optimum(const IlpModel& model);

/// Energy units of the cheapest single-BS allocation (every user served by one
/// BS only), or nullopt when none fits.
std::optional<std::int64_t> best_single_bs_units(const IlpModel& model);

}  // namespace fdran
