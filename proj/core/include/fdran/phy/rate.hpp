// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "fdran/common/rational.hpp"
#include "fdran/phy/cqi_table.hpp"
#include "fdran/phy/types.hpp"

namespace fdran {

/// Exact achievable rate in bits/s; zero when cqi_em > cqi_re or cqi_em == 0.
Rational achievable_rate_exact(int layers, int cqi_em, int cqi_re, std::int64_t n_subcarriers,
                               const PhyConfig& cfg, const CqiTable& table);

double achievable_rate(int layers, int cqi_em, int cqi_re, std::int64_t n_subcarriers,
                       const PhyConfig& cfg, const CqiTable& table);

/// Integer per-subcarrier rate used by the schedulers (floor of the exact rate).
std::int64_t rate_per_subcarrier_bps(int layers, int cqi_em, const PhyConfig& cfg, const CqiTable& table);

/// Bits delivered in one slot on n subcarriers (floor of rate * slot duration).
std::int64_t bits_per_slot(int layers, int cqi_em, int cqi_re, std::int64_t n_subcarriers,
                           const PhyConfig& cfg, const CqiTable& table);

/// Overhead as an exact fraction.
Rational overhead_fraction(const PhyConfig& cfg);

}  // namespace fdran
