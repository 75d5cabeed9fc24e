// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/sim/transmit.hpp"

#include <numeric>

#include "fdran/common/error.hpp"
#include "fdran/phy/link.hpp"
#include "fdran/phy/miesm.hpp"
#include "fdran/phy/rate.hpp"

namespace fdran {

int segment_real_cqi(const ScheduledSegment& seg, const Vec3& location, const LinkContext& ctx, std::int64_t slot) {
  if (seg.count <= 0) return 0;
  std::vector<int> idx(static_cast<std::size_t>(seg.count));
  std::iota(idx.begin(), idx.end(), seg.first);
  std::vector<ChannelSet> chans;
  for (std::size_t b = 0; b < ctx.bs->size(); ++b) {
    if (seg.mask & (CoopMask{1} << b)) {
      chans.push_back(gen_channel(location, (*ctx.bs)[b], *ctx.phy, ctx.total_subcarriers, idx, ctx.env_seed, slot));
    }
  }
  if (chans.empty()) throw Error(ErrorCode::kInvalidArgument, "segment without BSs");
  std::vector<const ChannelSet*> ptrs;
  for (const auto& c : chans) ptrs.push_back(&c);
  const auto eff = jt_effective_channel(ptrs, seg.precoder);
  return determine_cqi(zf_sinrs(eff, ctx.phy->noise_variance), ctx.phy->alpha, *ctx.table);
}

std::vector<SegmentOutcome> transmit(const std::vector<ScheduledSegment>& segments, const std::vector<Vec3>& locations,
                                     const LinkContext& ctx, std::int64_t slot) {
  std::vector<SegmentOutcome> out(segments.size());
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    if (seg.count <= 0 || seg.cqi_em < 1) continue;
    auto& o = out[i];
    o.cqi_re = segment_real_cqi(seg, locations.at(static_cast<std::size_t>(seg.user_index)), ctx, slot);
    o.bad_cqi = seg.cqi_em > o.cqi_re;
    o.bits = bits_per_slot(seg.layers, seg.cqi_em, o.cqi_re, seg.count, *ctx.phy, *ctx.table);
  }
  return out;
}

}  // namespace fdran
