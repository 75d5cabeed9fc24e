// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/sim/metrics_io.hpp"

#include <cmath>
#include <iomanip>

namespace fdran {

void write_slot_csv(const EpisodeMetrics& m, std::ostream& out) {
  out << "slot,user_id,arrived,delivered,buffer,bad_cqi,load_class,energy_mw,V_period\n";
  out << std::setprecision(10);
  for (const auto& r : m.records) {
    out << r.slot << ',' << r.user_id << ',' << r.arrived << ',' << r.delivered << ',' << r.buffer << ','
        << (r.bad_cqi ? 1 : 0) << ',' << r.load_class << ',' << r.energy_mw << ',';
    if (!std::isnan(r.v_period)) out << r.v_period;
    out << '\n';
  }
}

void write_aggregate_header(std::ostream& out) {
  out << "seed,V,energy_mw,energy_per_slot_mw,bad_cqi_ratio,heavy_fraction,arrived_bits,delivered_bits,"
         "residual_bits,dropped_bits,overlap_violations,fairness_relaxations,decisions\n";
}

void write_aggregate_row(std::uint64_t seed, const EpisodeMetrics& m, std::ostream& out) {
  out << std::setprecision(12) << seed << ',' << m.v << ',' << m.energy_mw << ',' << m.energy_per_slot << ','
      << m.bad_cqi_ratio << ',' << m.heavy_fraction << ',' << m.arrived << ',' << m.delivered << ',' << m.residual
      << ',' << m.dropped << ',' << m.overlap_violations << ',' << m.fairness_relaxations << ','
      << m.dispatch.size() << '\n';
}

void write_dispatch_csv(const EpisodeMetrics& m, std::ostream& out) {
  out << "id,computed_slot,report_slot,activation_slot,load,fairness_relaxed,proven,nodes,subcarriers,"
         "active_pairs\n";
  for (const auto& d : m.dispatch) {
    out << d.id << ',' << d.computed_slot << ',' << d.report_slot << ',' << d.activation_slot << ','
        << to_string(d.load) << ',' << (d.fairness_relaxed ? 1 : 0) << ',' << (d.proven_optimal ? 1 : 0) << ','
        << d.nodes << ',' << d.subcarriers_used << ',' << d.active_pairs << '\n';
  }
}

}  // namespace fdran
