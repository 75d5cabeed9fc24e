// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "fdran/ffmap/rate_map.hpp"
#include "fdran/sim/baseline.hpp"
#include "fdran/sim/load.hpp"
#include "fdran/sim/resource_map.hpp"
#include "fdran/sim/transmit.hpp"

namespace fdran {

struct SimConfig {
  MapBuildConfig network;  // geometry, PHY, environment seed and K
  int users = 10;
  int d1 = 2;    // report age needed before use
  int d2 = 3;    // computation latency
  int d3 = 3;    // dispatch latency
  int t_rp = 3;  // report period
  int t_sc = 10; // scheduling period
  /// Independent mode schedules and transmits every slot against a report
  /// `csi_delay` slots old and drops whatever is left at the end of the slot.
  bool independent = false;
  int csi_delay = 0;
  double power_mw = 1.0;
  double eta_min = 0.1;
  double lambda = 1000.0;
  double arrival_min_bits = 200.0;  // per-user mean arrival per slot is drawn from this range
  double arrival_max_bits = 2000.0;
  double arrival_scale = 1.0;
  double arrival_jitter = 0.2;
  int episode_slots = 100;
  Scheme scheme = Scheme::kFeedbackFree;
  CoopRestriction coop = CoopRestriction::kFlexible;
  int pair_a = 0;
  int pair_b = 2;
  std::uint64_t seed = 1;  // episode seed
  int n_flip = 15;
  int pump_iterations = 200;
  std::int64_t node_limit = 10000;
  double time_limit_ms = -1.0;

  int effective_t_sc() const { return independent ? 1 : t_sc; }
  int effective_t_rp() const { return independent ? 1 : t_rp; }
  int effective_d1() const { return independent ? csi_delay : d1; }
  int effective_d2() const { return independent ? 0 : d2; }
  int effective_d3() const { return independent ? 0 : d3; }
  /// Global BS indices the schedulers may use.
  std::vector<int> allowed_bs() const;
  void validate() const;
};

struct SlotRecord {
  std::int64_t slot = 0;
  int user_id = 0;
  std::int64_t arrived = 0;
  std::int64_t delivered = 0;
  std::int64_t buffer = 0;  // after transmission
  bool bad_cqi = false;
  char load_class = '-';    // 'H', 'L' or '-' when no decision is active
  double energy_mw = 0.0;   // this user's share of the slot's transmit energy
  double v_period = std::numeric_limits<double>::quiet_NaN();  // set on the last slot of a period
};

struct DispatchRecord {
  int id = 0;
  std::int64_t computed_slot = 0;
  std::int64_t report_slot = 0;
  std::int64_t activation_slot = 0;
  LoadClass load = LoadClass::kLight;
  bool fairness_relaxed = false;
  bool proven_optimal = true;
  std::int64_t nodes = 0;
  double solve_ms = 0.0;
  std::int64_t subcarriers_used = 0;
  std::int64_t active_pairs = 0;       // (BS, subcarrier) pairs the decision switches on
  std::int64_t ilp_energy_units = -1;  // light load: energy units of the solver's assignment
};

struct EpisodeMetrics {
  double v = 0.0;                 // mean of per-period V
  std::vector<double> period_v;
  double energy_mw = 0.0;         // sum over slots
  double energy_per_slot = 0.0;
  double bad_cqi_ratio = 0.0;     // bad (segment, slot) events over transmitting ones
  double heavy_fraction = 0.0;    // over scheduling decisions
  std::int64_t arrived = 0;
  std::int64_t delivered = 0;
  std::int64_t residual = 0;
  std::int64_t dropped = 0;
  std::int64_t overlap_violations = 0;  // subcarrier-BS pairs used by two users in one slot
  int fairness_relaxations = 0;
  std::vector<SlotRecord> records;
  std::vector<DispatchRecord> dispatch;
};

/// Slot-driven simulator. Each slot: arrivals, reports, scheduling on period
/// boundaries, activation of due decisions, transmission, metrics.
class Simulator {
 public:
  /// `map` is required for the feedback-free scheme and must match `cfg.network`.
  Simulator(const SimConfig& cfg, const RateMap* map, const CqiTable& table = CqiTable::standard());

  void step();
  bool done() const { return slot_ >= cfg_.episode_slots; }
  std::int64_t slot() const { return slot_; }
  const std::vector<Vec3>& locations() const { return locations_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<std::int64_t>& buffers() const { return buffers_; }
  EpisodeMetrics finish();

 private:
  struct Decision {
    DispatchRecord record;
    std::vector<ScheduledSegment> segments;
  };

  std::int64_t channel_slot(std::int64_t slot) const { return slot_base_ + slot; }
  Decision schedule(std::int64_t report_slot);
  void close_period();

  SimConfig cfg_;
  const RateMap* map_;
  const CqiTable& table_;
  LinkContext link_;
  std::vector<int> allowed_;
  std::int64_t slot_base_ = 0;
  std::int64_t slot_ = 0;
  std::vector<Vec3> locations_;
  std::vector<double> weights_;
  std::vector<double> mean_arrival_;
  std::vector<std::int64_t> buffers_;
  std::vector<std::int64_t> period_available_;
  std::vector<std::int64_t> period_delivered_;
  std::int64_t period_start_ = 0;
  std::vector<std::int64_t> report_slots_;
  std::vector<Decision> pending_;
  Decision active_;
  bool has_active_ = false;
  int next_decision_id_ = 0;
  std::int64_t bad_events_ = 0;
  std::int64_t tx_events_ = 0;
  EpisodeMetrics metrics_;
};

EpisodeMetrics run_episode(const SimConfig& cfg, const RateMap* map, const CqiTable& table = CqiTable::standard());

}  // namespace fdran
