// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fdran/sim/simulator.hpp"

namespace fdran {

/// Known preset names, in documentation order.
std::vector<std::string> preset_names();

/// "paper-3bs": three BSs around a 15 x 15 grid of 2 m cells, K = 144, N = 10,
/// 16 x 4 antennas, the reference delay and period settings.
/// "tiny": two BSs, 4 x 4 cells, K = 48, N = 4, 8 x 2 antennas; fast enough
/// for large seeded sweeps. Throws ConfigError for unknown names.
SimConfig preset(std::string_view name);

}  // namespace fdran
