// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/sim/presets.hpp"

#include "fdran/common/error.hpp"

namespace fdran {

std::vector<std::string> preset_names() { return {"paper-3bs", "tiny"}; }

SimConfig preset(std::string_view name) {
  SimConfig c;
  auto& n = c.network;
  if (name == "paper-3bs") {
    n.grid.origin = {0.0, 0.0, 1.5};
    n.grid.spacing = {2.0, 2.0, 1.0};
    n.grid.counts = {15, 15, 1};
    n.bs = {{0, {-5.0, 15.0, 10.0}}, {1, {35.0, -5.0, 10.0}}, {2, {35.0, 35.0, 10.0}}};
    n.total_subcarriers = 144;
    c.users = 10;
    c.arrival_min_bits = 200.0;
    c.arrival_max_bits = 2000.0;
    return c;
  }
  if (name == "tiny") {
    n.grid.origin = {0.0, 0.0, 1.5};
    n.grid.spacing = {4.0, 4.0, 1.0};
    n.grid.counts = {4, 4, 1};
    n.bs = {{0, {-4.0, 8.0, 10.0}}, {1, {20.0, 8.0, 10.0}}};
    n.phy.n_tx = 8;
    n.phy.n_rx = 2;
    n.phy.max_layers = 2;
    n.total_subcarriers = 48;
    c.users = 4;
    c.pair_a = 0;
    c.pair_b = 1;
    c.arrival_min_bits = 200.0;
    c.arrival_max_bits = 2000.0;
    return c;
  }
  throw Error(ErrorCode::kConfigError, "unknown preset '" + std::string(name) + "'");
}

}  // namespace fdran
