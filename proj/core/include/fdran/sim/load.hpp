// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace fdran {

enum class LoadClass : std::uint8_t { kHeavy, kLight };

std::string_view to_string(LoadClass c);

/// Light iff the JT-of-all subcarrier requirement sum ceil(R^d / R^1) fits in K.
/// Users with zero demand or zero JT rate do not count.
LoadClass classify_load(const std::vector<std::int64_t>& demands, const std::vector<std::int64_t>& jt_rates,
                        std::int64_t k);

/// R^d = buffer / (T_sc * slot duration), rounded up to whole bits/s.
std::int64_t demand_from_buffer(std::int64_t buffer_bits, int t_sc, int numerology = 0);

}  // namespace fdran
