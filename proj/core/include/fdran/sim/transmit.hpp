// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "fdran/ffmap/rate_map.hpp"
#include "fdran/phy/channel.hpp"

namespace fdran {

/// A mapped segment with the parameters it is transmitted with.
struct ScheduledSegment {
  int user_index = 0;  // position in the simulator's user list
  CoopMask mask = 0;   // global BS mask
  int first = 0;
  int count = 0;
  int layers = 1;
  int cqi_em = 0;
  Precoder precoder;   // stacked over the mask's BSs
};

struct SegmentOutcome {
  int cqi_re = 0;
  std::int64_t bits = 0;
  bool bad_cqi = false;
};

struct LinkContext {
  const std::vector<BsGeometry>* bs = nullptr;
  const PhyConfig* phy = nullptr;
  const CqiTable* table = nullptr;
  int total_subcarriers = 0;
  std::uint64_t env_seed = 0;
};

/// Real CQI of a segment's subcarriers for a channel realization at `slot`.
int segment_real_cqi(const ScheduledSegment& seg, const Vec3& location, const LinkContext& ctx, std::int64_t slot);

/// Bits each segment delivers in one slot against the channel at `slot`.
/// Zero, and flagged, when the employed CQI exceeds the real CQI.
std::vector<SegmentOutcome> transmit(const std::vector<ScheduledSegment>& segments, const std::vector<Vec3>& locations,
                                     const LinkContext& ctx, std::int64_t slot);

}  // namespace fdran
