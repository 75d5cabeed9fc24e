// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/ffmap/rate_map.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "fdran/common/error.hpp"
#include "fdran/common/fnv.hpp"
#include "fdran/phy/link.hpp"
#include "fdran/phy/miesm.hpp"
#include "fdran/phy/rate.hpp"

namespace fdran {

Vec3 GridSpec::cell_center(std::uint32_t cell) const {
  if (cell >= cell_count()) throw Error(ErrorCode::kOutOfGrid, "cell id out of range");
  const std::uint32_t ix = cell % counts[0];
  const std::uint32_t iy = (cell / counts[0]) % counts[1];
  const std::uint32_t iz = cell / (counts[0] * counts[1]);
  return {origin.x + (ix + 0.5) * spacing.x, origin.y + (iy + 0.5) * spacing.y, origin.z + (iz + 0.5) * spacing.z};
}

std::uint32_t GridSpec::cell_of(const Vec3& loc) const {
  const double v[3] = {loc.x, loc.y, loc.z};
  const double o[3] = {origin.x, origin.y, origin.z};
  const double s[3] = {spacing.x, spacing.y, spacing.z};
  std::uint32_t idx[3];
  for (int a = 0; a < 3; ++a) {
    const double t = (v[a] - o[a]) / s[a];
    const auto n = static_cast<double>(counts[static_cast<std::size_t>(a)]);
    if (!(t >= -1e-9 && t <= n + 1e-9)) throw Error(ErrorCode::kOutOfGrid, "location outside map grid");
    const double i = std::clamp(std::ceil(t) - 1.0, 0.0, n - 1.0);
    idx[a] = static_cast<std::uint32_t>(i);
  }
  return idx[0] + counts[0] * (idx[1] + counts[1] * idx[2]);
}

void GridSpec::validate() const {
  if (counts[0] == 0 || counts[1] == 0 || counts[2] == 0) throw Error(ErrorCode::kConfigError, "grid is empty");
  if (!(spacing.x > 0 && spacing.y > 0 && spacing.z > 0)) throw Error(ErrorCode::kConfigError, "grid spacing must be > 0");
  if (static_cast<std::uint64_t>(counts[0]) * counts[1] * counts[2] > (1u << 24)) {
    throw Error(ErrorCode::kConfigError, "grid too large");
  }
}

std::vector<Precoder> TransmissionParams::per_bs(int n_tx) const {
  std::vector<Precoder> out;
  const auto members = precoder.matrix.rows() / n_tx;
  for (Eigen::Index m = 0; m < members; ++m) out.push_back({precoder.block(static_cast<int>(m), n_tx)});
  return out;
}

std::uint64_t MapBuildConfig::hash() const {
  Fnv1a h;
  h.value(grid.origin.x);
  h.value(grid.origin.y);
  h.value(grid.origin.z);
  h.value(grid.spacing.x);
  h.value(grid.spacing.y);
  h.value(grid.spacing.z);
  for (auto c : grid.counts) h.value(c);
  for (const auto& b : bs) {
    h.value(b.id);
    h.value(b.position.x);
    h.value(b.position.y);
    h.value(b.position.z);
  }
  h.value(phy.n_tx);
  h.value(phy.n_rx);
  h.value(phy.noise_variance);
  h.value(phy.alpha);
  h.value(phy.numerology);
  h.value(phy.overhead);
  h.value(phy.max_layers);
  const auto& c = phy.channel;
  h.value(c.ref_gain);
  h.value(c.pathloss_exponent);
  h.value(c.min_paths);
  h.value(c.max_paths);
  h.value(c.max_delay_s);
  h.value(c.k_factor_db_min);
  h.value(c.k_factor_db_max);
  h.value(c.angle_spread_deg);
  h.value(c.doppler_hz);
  h.value(c.sinusoids);
  h.value(samples);
  h.value(seed);
  h.value(total_subcarriers);
  h.value(eval_subcarriers);
  h.value(history_stride);
  return h.digest();
}

void MapBuildConfig::validate() const {
  grid.validate();
  phy.validate();
  if (bs.empty() || bs.size() > 16) throw Error(ErrorCode::kConfigError, "BS count must be in 1..16");
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (bs[i].id != static_cast<int>(i)) throw Error(ErrorCode::kConfigError, "BS ids must be 0..M-1 in order");
  }
  if (samples < 1) throw Error(ErrorCode::kConfigError, "samples must be >= 1");
  if (total_subcarriers < 1) throw Error(ErrorCode::kConfigError, "subcarrier count must be >= 1");
  if (eval_subcarriers < 1 || eval_subcarriers > total_subcarriers) {
    throw Error(ErrorCode::kConfigError, "eval_subcarriers must be in 1..K");
  }
  if (history_stride < 1) throw Error(ErrorCode::kConfigError, "history_stride must be >= 1");
}

RateMap::RateMap(GridSpec grid, int bs_count, int n_tx, int n_rx, std::uint64_t seed, std::uint32_t samples,
                 std::uint64_t config_hash)
    : grid_(grid), bs_count_(bs_count), n_tx_(n_tx), n_rx_(n_rx), seed_(seed), samples_(samples),
      config_hash_(config_hash) {
  if (bs_count < 1 || bs_count > 16) throw Error(ErrorCode::kInvalidArgument, "BS count must be in 1..16");
  entries_.resize(static_cast<std::size_t>(grid_.cell_count()) * static_cast<std::size_t>(masks_per_cell()));
}

std::size_t RateMap::index(std::uint32_t cell, CoopMask mask) const {
  if (cell >= grid_.cell_count()) throw Error(ErrorCode::kOutOfGrid, "cell id out of range");
  if (mask == 0 || mask > static_cast<CoopMask>(masks_per_cell())) {
    throw Error(ErrorCode::kInvalidArgument, "cooperation mask out of range");
  }
  return static_cast<std::size_t>(cell) * static_cast<std::size_t>(masks_per_cell()) + (mask - 1);
}

const TransmissionParams& RateMap::at(std::uint32_t cell, CoopMask mask) const { return entries_[index(cell, mask)]; }
TransmissionParams& RateMap::at(std::uint32_t cell, CoopMask mask) { return entries_[index(cell, mask)]; }

const TransmissionParams& RateMap::query(const Vec3& location, CoopMask mask) const {
  return at(grid_.cell_of(location), mask);
}

std::size_t employed_cqi_rank(std::size_t samples) { return (9 * samples + 9) / 10 - 1; }

int employed_cqi(std::vector<int> real_cqis) {
  if (real_cqis.empty()) throw Error(ErrorCode::kEmptyInput, "no CQI samples");
  const auto rank = employed_cqi_rank(real_cqis.size());
  std::nth_element(real_cqis.begin(), real_cqis.begin() + static_cast<std::ptrdiff_t>(rank), real_cqis.end(),
                   std::greater<>());
  return real_cqis[rank];
}

std::int64_t history_slot(std::int64_t stride, int sample) { return -(static_cast<std::int64_t>(sample) + 1) * stride; }

std::vector<int> eval_subcarrier_indices(int total, int count) {
  std::vector<int> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<int>((2LL * i + 1) * total / (2LL * count));
  }
  return out;
}

TransmissionParams derive_params(const std::vector<std::vector<ChannelSet>>& samples, const PhyConfig& cfg,
                                 const CqiTable& table) {
  if (samples.empty() || samples.front().empty()) throw Error(ErrorCode::kEmptyInput, "no channel samples");
  const std::size_t members = samples.front().size();
  const int n_tx = samples.front().front().n_tx();
  const int n_rx = samples.front().front().n_rx();
  const int dim = n_tx * static_cast<int>(members);

  // Averaged Gram of the concatenated channel over samples and subcarriers.
  CMatrix gram = CMatrix::Zero(dim, dim);
  std::size_t terms = 0;
  std::vector<std::vector<const ChannelSet*>> ptrs(samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s) {
    if (samples[s].size() != members) throw Error(ErrorCode::kDimensionMismatch, "sample member counts differ");
    for (const auto& c : samples[s]) ptrs[s].push_back(&c);
    for (int k = 0; k < samples[s].front().subcarrier_count(); ++k) {
      const CMatrix h = concat_channel(ptrs[s], k);
      gram.noalias() += h.adjoint() * h;
      ++terms;
    }
  }
  gram /= static_cast<double>(terms);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram);
  const CMatrix& vecs = eig.eigenvectors();  // ascending eigenvalues

  const int l_max = std::min({n_rx, cfg.max_layers, dim});
  TransmissionParams best;
  best.layers = 0;
  std::vector<int> cqis(samples.size());
  for (int l = 1; l <= l_max; ++l) {
    Precoder w{vecs.rightCols(l).rowwise().reverse() / std::sqrt(static_cast<double>(l))};
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const auto eff = jt_effective_channel(ptrs[s], w);
      const auto sinr = zf_sinrs(eff, cfg.noise_variance);
      cqis[s] = determine_cqi(sinr, cfg.alpha, table);
    }
    const int cqi_em = employed_cqi(cqis);
    const std::int64_t rate = cqi_em > 0 ? rate_per_subcarrier_bps(l, cqi_em, cfg, table) : 0;
    if (best.layers == 0 || rate > best.rate_per_subcarrier) {
      best.layers = l;
      best.cqi_em = cqi_em;
      best.rate_per_subcarrier = rate;
      best.precoder = std::move(w);
    }
  }
  return best;
}

RateMap build_map(const MapBuildConfig& cfg, const CqiTable& table, int jobs) {
  cfg.validate();
  const int m = static_cast<int>(cfg.bs.size());
  RateMap map(cfg.grid, m, cfg.phy.n_tx, cfg.phy.n_rx, cfg.seed, static_cast<std::uint32_t>(cfg.samples),
              cfg.hash());
  const auto sc = eval_subcarrier_indices(cfg.total_subcarriers, cfg.eval_subcarriers);
  const std::uint32_t cells = cfg.grid.cell_count();

  auto work = [&](std::uint32_t cell) {
    const Vec3 loc = cfg.grid.cell_center(cell);
    // channels[s][b]
    std::vector<std::vector<ChannelSet>> channels(static_cast<std::size_t>(cfg.samples));
    for (int s = 0; s < cfg.samples; ++s) {
      for (const auto& b : cfg.bs) {
        channels[static_cast<std::size_t>(s)].push_back(gen_channel(
            loc, b, cfg.phy, cfg.total_subcarriers, sc, cfg.seed, history_slot(cfg.history_stride, s)));
      }
    }
    for (CoopMask mask = 1; mask <= static_cast<CoopMask>(map.masks_per_cell()); ++mask) {
      std::vector<std::vector<ChannelSet>> subset(channels.size());
      for (std::size_t s = 0; s < channels.size(); ++s) {
        for (int b = 0; b < m; ++b) {
          if (mask & (1u << b)) subset[s].push_back(channels[s][static_cast<std::size_t>(b)]);
        }
      }
      map.at(cell, mask) = derive_params(subset, cfg.phy, table);
    }
  };

  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(cells)));
  if (threads == 1) {
    for (std::uint32_t c = 0; c < cells; ++c) work(c);
  } else {
    std::atomic<std::uint32_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::uint32_t c = next++; c < cells; c = next++) work(c);
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
          next = cells;
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return map;
}

}  // namespace fdran
