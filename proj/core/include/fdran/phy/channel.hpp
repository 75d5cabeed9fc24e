// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fdran/phy/types.hpp"

namespace fdran {

struct BsGeometry {
  int id = 0;
  Vec3 position;
};

/// Synthetic multipath channel between a BS and a receiver location.
///
/// Path angles, delays, powers and the direct-path Rician factor are a hash of
/// (location, BS, seed), so the statistics depend on location only. Each path
/// fades over time as a sum of sinusoids evaluated at the slot instant, so
/// any slot can be regenerated on demand without replaying history.
ChannelSet gen_channel(const Vec3& location, const BsGeometry& bs, const PhyConfig& cfg,
                       int subcarriers, std::uint64_t seed, std::int64_t slot);

/// Channel restricted to the listed subcarrier indices out of `total_subcarriers`.
ChannelSet gen_channel(const Vec3& location, const BsGeometry& bs, const PhyConfig& cfg,
                       int total_subcarriers, std::span<const int> subcarrier_indices,
                       std::uint64_t seed, std::int64_t slot);

/// Path-loss gain g = ref_gain * max(d, 1)^-exponent.
double large_scale_gain(const Vec3& location, const BsGeometry& bs, const ChannelModelParams& model);

/// Unit-modulus half-wavelength ULA response.
CVector steering_vector(int antennas, double angle_rad);

}  // namespace fdran
