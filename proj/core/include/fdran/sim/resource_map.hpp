// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "fdran/ilp/model.hpp"

namespace fdran {

struct Segment {
  CoopMask mask = 0;
  std::int64_t count = 0;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Nested segments realizing per-BS subcarrier counts: repeatedly serve the
/// BSs that still have subcarriers left on min(count) subcarriers.
std::vector<Segment> decompose_bs_counts(const std::vector<std::int64_t>& per_bs_counts);

struct UserAllocation {
  int user_id = 0;
  std::vector<Segment> segments;
};

struct MappedSegment {
  int user_id = 0;
  CoopMask mask = 0;
  int first = 0;
  int count = 0;
};

struct SubcarrierUse {
  int user_id = -1;
  CoopMask mask = 0;
};

struct ResourceMap {
  std::vector<SubcarrierUse> subcarriers;
  std::vector<MappedSegment> segments;

  /// Sum over subcarriers of active BS count.
  std::int64_t active_pairs() const;
};

/// Contiguous mapping, users by ascending id, each user's segments by
/// descending BS count. Throws CapacityExceeded.
ResourceMap build_resource_map(std::vector<UserAllocation> allocations, std::int64_t k);

}  // namespace fdran
