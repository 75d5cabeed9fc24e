// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/sim/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_set>

#include "fdran/common/error.hpp"
#include "fdran/common/random.hpp"
#include "fdran/sched/heavy.hpp"
#include "fdran/tsra/tsra.hpp"

namespace fdran {
namespace {

constexpr std::uint64_t kPlacementTag = 0x706c616365ULL;
constexpr std::uint64_t kArrivalTag = 0x6172726976ULL;
constexpr std::uint64_t kSlotBaseTag = 0x736c6f74ULL;
constexpr std::uint64_t kPumpTag = 0x70756d70ULL;

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kConfigError, what);
}

}  // namespace

std::vector<int> SimConfig::allowed_bs() const {
  const int m = static_cast<int>(network.bs.size());
  switch (coop) {
    case CoopRestriction::kSingleBs: return {0};
    case CoopRestriction::kFixedPair: return {std::min(pair_a, pair_b), std::max(pair_a, pair_b)};
    case CoopRestriction::kFlexible: {
      std::vector<int> all(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
      return all;
    }
  }
  return {};
}

void SimConfig::validate() const {
  network.validate();
  const int m = static_cast<int>(network.bs.size());
  require(users >= 1, "users must be >= 1");
  require(d1 >= 0 && d2 >= 0 && d3 >= 0 && csi_delay >= 0, "delays must be >= 0");
  require(t_rp >= 1 && t_sc >= 1, "periods must be >= 1");
  require(episode_slots >= 1, "episode_slots must be >= 1");
  require(eta_min >= 0.0 && eta_min < 1.0, "eta_min must be in [0, 1)");
  require(power_mw > 0.0, "power_mw must be > 0");
  require(lambda > 0.0, "lambda must be > 0");
  require(arrival_min_bits >= 0.0 && arrival_max_bits >= arrival_min_bits, "bad arrival range");
  require(arrival_scale >= 0.0, "arrival_scale must be >= 0");
  require(arrival_jitter >= 0.0 && arrival_jitter < 1.0, "arrival_jitter must be in [0, 1)");
  require(n_flip >= 1 && pump_iterations >= 1, "pump settings must be >= 1");
  if (coop == CoopRestriction::kFixedPair) {
    require(pair_a != pair_b && pair_a >= 0 && pair_b >= 0 && pair_a < m && pair_b < m, "bad fixed BS pair");
  }
  require(static_cast<std::uint64_t>(users) <= network.grid.cell_count(), "more users than grid cells");
}

Simulator::Simulator(const SimConfig& cfg, const RateMap* map, const CqiTable& table)
    : cfg_(cfg), map_(map), table_(table) {
  cfg_.validate();
  if (cfg_.scheme == Scheme::kFeedbackFree) {
    if (map_ == nullptr) throw Error(ErrorCode::kConfigError, "feedback-free scheme needs a rate map");
    if (map_->config_hash() != cfg_.network.hash()) {
      throw Error(ErrorCode::kConfigError, "rate map was built for a different network");
    }
  }
  link_ = {&cfg_.network.bs, &cfg_.network.phy, &table_, cfg_.network.total_subcarriers, cfg_.network.seed};
  allowed_ = cfg_.allowed_bs();
  slot_base_ = static_cast<std::int64_t>(hash_keys({cfg_.seed, kSlotBaseTag}) >> 34) + 1;

  Rng rng(hash_keys({cfg_.seed, kPlacementTag}));
  const auto cells = cfg_.network.grid.cell_count();
  std::unordered_set<std::uint64_t> taken;
  double weight_sum = 0.0;
  for (int n = 0; n < cfg_.users; ++n) {
    std::uint64_t c;
    do {
      c = rng.below(cells);
    } while (!taken.insert(c).second);
    locations_.push_back(cfg_.network.grid.cell_center(static_cast<std::uint32_t>(c)));
    weights_.push_back(rng.uniform(0.1, 1.0));
    weight_sum += weights_.back();
    mean_arrival_.push_back(rng.uniform(cfg_.arrival_min_bits, cfg_.arrival_max_bits) * cfg_.arrival_scale);
  }
  for (auto& w : weights_) w /= weight_sum;
  buffers_.assign(static_cast<std::size_t>(cfg_.users), 0);
  period_available_.assign(buffers_.size(), 0);
  period_delivered_.assign(buffers_.size(), 0);
}

Simulator::Decision Simulator::schedule(std::int64_t report_slot) {
  const auto n_users = static_cast<std::size_t>(cfg_.users);
  const int m_loc = static_cast<int>(allowed_.size());
  const CoopMask full_local = (CoopMask{1} << m_loc) - 1;
  const std::int64_t k = cfg_.network.total_subcarriers;
  const auto& phy = cfg_.network.phy;
  auto to_global = [&](CoopMask local) {
    CoopMask g = 0;
    for (int i = 0; i < m_loc; ++i) {
      if (local & (CoopMask{1} << i)) g |= CoopMask{1} << allowed_[static_cast<std::size_t>(i)];
    }
    return g;
  };

  std::vector<std::int64_t> demand(n_users);
  for (std::size_t n = 0; n < n_users; ++n) {
    demand[n] = demand_from_buffer(buffers_[n], cfg_.effective_t_sc(), phy.numerology);
  }

  // Reported channels are only needed by the feedback schemes.
  std::vector<std::vector<ChannelSet>> reported(n_users);
  const auto eval_idx = eval_subcarrier_indices(cfg_.network.total_subcarriers, cfg_.network.eval_subcarriers);
  std::vector<std::vector<TransmissionParams>> params(n_users,
                                                      std::vector<TransmissionParams>(static_cast<std::size_t>(full_local)));
  std::vector<std::vector<bool>> known(n_users, std::vector<bool>(static_cast<std::size_t>(full_local), false));
  auto param = [&](std::size_t n, CoopMask local) -> const TransmissionParams& {
    const auto i = static_cast<std::size_t>(local - 1);
    if (known[n][i]) return params[n][i];
    const CoopMask g = to_global(local);
    if (cfg_.scheme == Scheme::kFeedbackFree) {
      params[n][i] = map_->query(locations_[n], g);
    } else {
      if (reported[n].empty()) {
        for (int b : allowed_) {
          reported[n].push_back(gen_channel(locations_[n], cfg_.network.bs[static_cast<std::size_t>(b)], phy,
                                            cfg_.network.total_subcarriers, eval_idx, cfg_.network.seed,
                                            channel_slot(report_slot)));
        }
      }
      std::vector<const ChannelSet*> members;
      for (int j = 0; j < m_loc; ++j) {
        if (local & (CoopMask{1} << j)) members.push_back(&reported[n][static_cast<std::size_t>(j)]);
      }
      params[n][i] = baseline_params(cfg_.scheme, members, phy, table_);
    }
    known[n][i] = true;
    return params[n][i];
  };

  std::vector<std::int64_t> jt_rate(n_users, 0);
  std::vector<std::size_t> active;
  for (std::size_t n = 0; n < n_users; ++n) {
    if (demand[n] <= 0) continue;
    jt_rate[n] = param(n, full_local).rate_per_subcarrier;
    if (jt_rate[n] > 0) active.push_back(n);
  }

  Decision d;
  d.record.report_slot = report_slot;
  d.record.load = classify_load(demand, jt_rate, k);
  std::vector<UserAllocation> allocs;
  if (!active.empty() && d.record.load == LoadClass::kHeavy) {
    std::vector<UserDemand> users;
    for (auto n : active) users.push_back({static_cast<int>(n), weights_[n], demand[n], jt_rate[n]});
    HeavyAllocation alloc;
    try {
      alloc = greedy_schedule(users, k, cfg_.eta_min);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kFairnessInfeasible) throw;
      alloc = greedy_schedule(users, k, 0.0);
      d.record.fairness_relaxed = true;
    }
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (alloc.subcarriers[i] > 0) {
        allocs.push_back({static_cast<int>(active[i]), {{to_global(full_local), alloc.subcarriers[i]}}});
      }
    }
  } else if (!active.empty()) {
    std::vector<LightUser> users;
    for (auto n : active) {
      LightUser u{static_cast<int>(n), demand[n], std::vector<std::int64_t>(static_cast<std::size_t>(full_local))};
      for (CoopMask mask = 1; mask <= full_local; ++mask) u.rates[mask - 1] = param(n, mask).rate_per_subcarrier;
      users.push_back(std::move(u));
    }
    const auto model = build_ilp(users, m_loc, k, cfg_.power_mw, cfg_.lambda);
    TsraOptions opt;
    opt.pump.n_flip = cfg_.n_flip;
    opt.pump.max_iterations = cfg_.pump_iterations;
    opt.pump.seed = hash_keys({cfg_.seed, kPumpTag, static_cast<std::uint64_t>(slot_)});
    opt.bnb.limits.node_limit = cfg_.node_limit;
    opt.bnb.limits.time_limit_ms = cfg_.time_limit_ms;
    const auto res = tsra(model, opt);
    d.record.proven_optimal = res.proven_optimal;
    d.record.nodes = res.nodes;
    d.record.solve_ms = res.wall_ms;
    d.record.ilp_energy_units = energy_units(model, res.best);
    const auto segs = assignment_segments(model, res.best);
    for (std::size_t i = 0; i < active.size(); ++i) {
      UserAllocation a{static_cast<int>(active[i]), {}};
      for (const auto& [mask, count] : segs[i]) {
        if (count > 0) a.segments.push_back({to_global(mask), count});
      }
      if (!a.segments.empty()) allocs.push_back(std::move(a));
    }
  }

  const auto map = build_resource_map(std::move(allocs), k);
  d.record.active_pairs = map.active_pairs();
  for (const auto& ms : map.segments) {
    const auto n = static_cast<std::size_t>(ms.user_id);
    CoopMask local = 0;
    for (int j = 0; j < m_loc; ++j) {
      if (ms.mask & (CoopMask{1} << allowed_[static_cast<std::size_t>(j)])) local |= CoopMask{1} << j;
    }
    const auto& p = param(n, local);
    ScheduledSegment seg{ms.user_id, ms.mask, ms.first, ms.count, p.layers, p.cqi_em, p.precoder};
    if (cfg_.scheme == Scheme::kOptimalFeedback) {
      // Subband CQI measured on the reported channel of the assigned subcarriers.
      seg.cqi_em = segment_real_cqi(seg, locations_[n], link_, channel_slot(report_slot));
    }
    d.record.subcarriers_used += ms.count;
    d.segments.push_back(std::move(seg));
  }
  return d;
}

void Simulator::step() {
  if (done()) return;
  const std::int64_t s = slot_;
  const auto n_users = static_cast<std::size_t>(cfg_.users);

  std::vector<std::int64_t> arrived(n_users);
  for (std::size_t n = 0; n < n_users; ++n) {
    Rng r(hash_keys({cfg_.seed, kArrivalTag, static_cast<std::uint64_t>(s), n}));
    const double jitter = cfg_.arrival_jitter * (2.0 * r.uniform() - 1.0);
    arrived[n] = std::max<std::int64_t>(0, std::llround(mean_arrival_[n] * (1.0 + jitter)));
    buffers_[n] += arrived[n];
    // Consecutive mode measures against the backlog held when the period
    // opened; independent mode against what arrived in the same slot.
    if (cfg_.independent) period_available_[n] += arrived[n];
    metrics_.arrived += arrived[n];
  }

  if (s % cfg_.effective_t_rp() == 0) report_slots_.push_back(s);

  if (s % cfg_.effective_t_sc() == 0) {
    // Newest report that is at least d1 slots old.
    std::int64_t report = -1;
    for (auto it = report_slots_.rbegin(); it != report_slots_.rend(); ++it) {
      if (s - *it >= cfg_.effective_d1()) {
        report = *it;
        break;
      }
    }
    if (report >= 0) {
      Decision d = schedule(report);
      d.record.id = next_decision_id_++;
      d.record.computed_slot = s;
      d.record.activation_slot = s + cfg_.effective_d2() + cfg_.effective_d3();
      if (d.record.fairness_relaxed) ++metrics_.fairness_relaxations;
      metrics_.dispatch.push_back(d.record);
      pending_.push_back(std::move(d));
    }
  }

  while (!pending_.empty() && pending_.front().record.activation_slot <= s) {
    active_ = std::move(pending_.front());
    pending_.erase(pending_.begin());
    has_active_ = true;
  }

  std::vector<std::int64_t> delivered(n_users, 0);
  std::vector<bool> bad(n_users, false);
  std::vector<double> energy(n_users, 0.0);
  if (has_active_) {
    const auto outcomes = transmit(active_.segments, locations_, link_, channel_slot(s));
    std::vector<CoopMask> used(static_cast<std::size_t>(cfg_.network.total_subcarriers), 0);
    for (std::size_t i = 0; i < active_.segments.size(); ++i) {
      const auto& seg = active_.segments[i];
      const auto n = static_cast<std::size_t>(seg.user_index);
      for (int j = seg.first; j < seg.first + seg.count; ++j) {
        auto& u = used[static_cast<std::size_t>(j)];
        if (u & seg.mask) ++metrics_.overlap_violations;
        u |= seg.mask;
      }
      energy[n] += cfg_.power_mw * std::popcount(seg.mask) * seg.count;
      if (seg.count > 0 && seg.cqi_em >= 1) {
        ++tx_events_;
        if (outcomes[i].bad_cqi) {
          ++bad_events_;
          bad[n] = true;
        }
      }
      delivered[n] += outcomes[i].bits;
    }
  }

  for (std::size_t n = 0; n < n_users; ++n) {
    delivered[n] = std::min(delivered[n], buffers_[n]);
    buffers_[n] -= delivered[n];
    period_delivered_[n] += delivered[n];
    metrics_.delivered += delivered[n];
    metrics_.energy_mw += energy[n];
    if (cfg_.independent) {
      metrics_.dropped += buffers_[n];
      buffers_[n] = 0;
    }
    SlotRecord rec;
    rec.slot = s;
    rec.user_id = static_cast<int>(n);
    rec.arrived = arrived[n];
    rec.delivered = delivered[n];
    rec.buffer = buffers_[n];
    rec.bad_cqi = bad[n];
    rec.load_class = has_active_ ? (active_.record.load == LoadClass::kHeavy ? 'H' : 'L') : '-';
    rec.energy_mw = energy[n];
    metrics_.records.push_back(rec);
  }

  ++slot_;
  if (slot_ % cfg_.effective_t_sc() == 0 || done()) close_period();
}

void Simulator::close_period() {
  double v = 0.0;
  for (std::size_t n = 0; n < buffers_.size(); ++n) {
    const auto avail = period_available_[n];
    const double eta = avail > 0 ? std::min(1.0, static_cast<double>(period_delivered_[n]) / static_cast<double>(avail))
                                 : 1.0;
    v += weights_[n] * eta;
  }
  metrics_.period_v.push_back(v);
  for (std::size_t i = metrics_.records.size() - buffers_.size(); i < metrics_.records.size(); ++i) {
    metrics_.records[i].v_period = v;
  }
  period_available_ = buffers_;
  std::fill(period_delivered_.begin(), period_delivered_.end(), 0);
  period_start_ = slot_;
}

EpisodeMetrics Simulator::finish() {
  EpisodeMetrics out = metrics_;
  out.residual = 0;
  for (auto b : buffers_) out.residual += b;
  if (!out.period_v.empty()) {
    double sum = 0.0;
    for (double v : out.period_v) sum += v;
    out.v = sum / static_cast<double>(out.period_v.size());
  }
  out.energy_per_slot = slot_ > 0 ? out.energy_mw / static_cast<double>(slot_) : 0.0;
  out.bad_cqi_ratio = tx_events_ > 0 ? static_cast<double>(bad_events_) / static_cast<double>(tx_events_) : 0.0;
  if (!out.dispatch.empty()) {
    const auto heavy = std::count_if(out.dispatch.begin(), out.dispatch.end(),
                                     [](const DispatchRecord& r) { return r.load == LoadClass::kHeavy; });
    out.heavy_fraction = static_cast<double>(heavy) / static_cast<double>(out.dispatch.size());
  }
  return out;
}

EpisodeMetrics run_episode(const SimConfig& cfg, const RateMap* map, const CqiTable& table) {
  Simulator sim(cfg, map, table);
  while (!sim.done()) sim.step();
  return sim.finish();
}

}  // namespace fdran
