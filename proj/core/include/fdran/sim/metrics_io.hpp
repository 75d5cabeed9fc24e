// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <ostream>

#include "fdran/sim/simulator.hpp"

namespace fdran {

/// Columns: slot,user_id,arrived,delivered,buffer,bad_cqi,load_class,energy_mw,V_period.
void write_slot_csv(const EpisodeMetrics& m, std::ostream& out);

/// Header of the per-episode aggregate table.
void write_aggregate_header(std::ostream& out);
/// One aggregate row: seed,V,energy_mw,energy_per_slot_mw,bad_cqi_ratio,heavy_fraction,
/// arrived_bits,delivered_bits,residual_bits,dropped_bits,overlap_violations,fairness_relaxations,decisions.
void write_aggregate_row(std::uint64_t seed, const EpisodeMetrics& m, std::ostream& out);

/// Columns: id,computed_slot,report_slot,activation_slot,load,fairness_relaxed,proven,nodes,subcarriers,
/// active_pairs. Wall-clock times are left out so reruns are byte-identical.
void write_dispatch_csv(const EpisodeMetrics& m, std::ostream& out);

}  // namespace fdran
