// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "fdran/ffmap/grid.hpp"
#include "fdran/phy/channel.hpp"
#include "fdran/phy/cqi_table.hpp"
#include "fdran/phy/types.hpp"

namespace fdran {

using CoopMask = std::uint32_t;

/// Fixed transmission parameters for one (location, cooperation set).
struct TransmissionParams {
  int layers = 1;
  int cqi_em = 0;
  std::int64_t rate_per_subcarrier = 0;  // bits/s, floor of the exact rate
  Precoder precoder;                      // stacked over the set, ascending BS index

  std::vector<Precoder> per_bs(int n_tx) const;

  friend bool operator==(const TransmissionParams& a, const TransmissionParams& b) {
    return a.layers == b.layers && a.cqi_em == b.cqi_em && a.rate_per_subcarrier == b.rate_per_subcarrier &&
           a.precoder.matrix == b.precoder.matrix;
  }
};

struct MapBuildConfig {
  GridSpec grid;
  std::vector<BsGeometry> bs;
  PhyConfig phy;
  int samples = 32;
  std::uint64_t seed = 1;          // environment seed shared with the simulator
  int total_subcarriers = 144;
  int eval_subcarriers = 12;       // evenly spaced subset used per sample
  std::int64_t history_stride = 997;  // slots between historical samples

  std::uint64_t hash() const;
  void validate() const;
};

class RateMap {
 public:
  RateMap() = default;
  RateMap(GridSpec grid, int bs_count, int n_tx, int n_rx, std::uint64_t seed, std::uint32_t samples,
          std::uint64_t config_hash);

  const GridSpec& grid() const { return grid_; }
  int bs_count() const { return bs_count_; }
  int n_tx() const { return n_tx_; }
  int n_rx() const { return n_rx_; }
  std::uint64_t seed() const { return seed_; }
  std::uint32_t samples() const { return samples_; }
  std::uint64_t config_hash() const { return config_hash_; }
  std::size_t entry_count() const { return entries_.size(); }
  int masks_per_cell() const { return (1 << bs_count_) - 1; }

  const TransmissionParams& at(std::uint32_t cell, CoopMask mask) const;
  TransmissionParams& at(std::uint32_t cell, CoopMask mask);
  /// Throws OutOfGrid.
  const TransmissionParams& query(const Vec3& location, CoopMask mask) const;

  friend bool operator==(const RateMap&, const RateMap&) = default;

 private:
  std::size_t index(std::uint32_t cell, CoopMask mask) const;

  GridSpec grid_;
  int bs_count_ = 0;
  int n_tx_ = 0;
  int n_rx_ = 0;
  std::uint64_t seed_ = 0;
  std::uint32_t samples_ = 0;
  std::uint64_t config_hash_ = 0;
  std::vector<TransmissionParams> entries_;
};

/// samples[s][i] is the s-th historical channel of the i-th member of the set.
TransmissionParams derive_params(const std::vector<std::vector<ChannelSet>>& samples, const PhyConfig& cfg,
                                 const CqiTable& table);

/// Index of the employed CQI in a descending sort of S per-sample CQIs:
/// at least 90% of samples reach it.
std::size_t employed_cqi_rank(std::size_t samples);

/// Highest CQI that at least 90% of the given per-sample real CQIs reach.
int employed_cqi(std::vector<int> real_cqis);

/// Historical slot index of sample s.
std::int64_t history_slot(std::int64_t stride, int sample);

/// Evenly spaced subset of subcarrier indices.
std::vector<int> eval_subcarrier_indices(int total, int count);

RateMap build_map(const MapBuildConfig& cfg, const CqiTable& table, int jobs = 1);

void save_map(const RateMap& map, const std::filesystem::path& path);
/// Throws FormatError on bad magic, version, truncation or trailing data.
RateMap load_map(const std::filesystem::path& path);

}  // namespace fdran
