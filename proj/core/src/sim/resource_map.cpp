// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/sim/resource_map.hpp"

#include <algorithm>
#include <bit>

#include "fdran/common/error.hpp"

namespace fdran {

std::vector<Segment> decompose_bs_counts(const std::vector<std::int64_t>& per_bs_counts) {
  if (per_bs_counts.size() > 31) throw Error(ErrorCode::kInvalidArgument, "too many BSs");
  std::vector<std::int64_t> left = per_bs_counts;
  for (auto c : left) {
    if (c < 0) throw Error(ErrorCode::kInvalidArgument, "negative subcarrier count");
  }
  std::vector<Segment> out;
  for (;;) {
    CoopMask mask = 0;
    std::int64_t step = 0;
    for (std::size_t b = 0; b < left.size(); ++b) {
      if (left[b] == 0) continue;
      mask |= CoopMask{1} << b;
      step = step == 0 ? left[b] : std::min(step, left[b]);
    }
    if (mask == 0) break;
    for (std::size_t b = 0; b < left.size(); ++b) {
      if (mask & (CoopMask{1} << b)) left[b] -= step;
    }
    out.push_back({mask, step});
  }
  return out;
}

std::int64_t ResourceMap::active_pairs() const {
  std::int64_t n = 0;
  for (const auto& s : subcarriers) n += std::popcount(s.mask);
  return n;
}

ResourceMap build_resource_map(std::vector<UserAllocation> allocations, std::int64_t k) {
  std::sort(allocations.begin(), allocations.end(),
            [](const UserAllocation& a, const UserAllocation& b) { return a.user_id < b.user_id; });
  std::int64_t total = 0;
  for (auto& a : allocations) {
    std::stable_sort(a.segments.begin(), a.segments.end(), [](const Segment& x, const Segment& y) {
      const int px = std::popcount(x.mask), py = std::popcount(y.mask);
      return px != py ? px > py : x.mask < y.mask;
    });
    for (const auto& s : a.segments) {
      if (s.count < 0 || s.mask == 0) throw Error(ErrorCode::kInvalidArgument, "bad segment");
      total += s.count;
    }
  }
  if (total > k) {
    throw Error(ErrorCode::kCapacityExceeded,
                "allocation needs " + std::to_string(total) + " subcarriers, only " + std::to_string(k) + " exist");
  }
  ResourceMap map;
  map.subcarriers.assign(static_cast<std::size_t>(k), SubcarrierUse{});
  int next = 0;
  for (const auto& a : allocations) {
    for (const auto& s : a.segments) {
      if (s.count == 0) continue;
      const int count = static_cast<int>(s.count);
      map.segments.push_back({a.user_id, s.mask, next, count});
      for (int i = 0; i < count; ++i) map.subcarriers[static_cast<std::size_t>(next + i)] = {a.user_id, s.mask};
      next += count;
    }
  }
  return map;
}

}  // namespace fdran
