// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "fdran/phy/types.hpp"

namespace fdran {

/// Zero-forcing equalizer (G^H G)^-1 G^H. Throws RankDeficient.
CMatrix zf_equalizer(const CMatrix& effective_channel);

/// Post-equalization SINR per layer for G = E H W.
std::vector<double> layer_sinr(const CMatrix& channel, const Precoder& precoder,
                               const CMatrix& equalizer, double noise_variance);

/// Same, given the effective channel H W directly.
std::vector<double> layer_sinr_effective(const CMatrix& effective_channel, const CMatrix& equalizer,
                                         double noise_variance);

/// Per-subcarrier sum over the cooperation set of H^m W^m.
std::vector<CMatrix> jt_effective_channel(const std::vector<const ChannelSet*>& channels,
                                          const std::vector<Precoder>& precoders);

/// Same, with a single stacked precoder split into per-BS row blocks.
std::vector<CMatrix> jt_effective_channel(const std::vector<const ChannelSet*>& channels,
                                          const Precoder& stacked);

/// Horizontal concatenation [H^1 ... H^|B|] at subcarrier k.
CMatrix concat_channel(const std::vector<const ChannelSet*>& channels, int k);

/// ZF SINRs of every (subcarrier, layer) pair. Rank-deficient subcarriers
/// contribute zeros.
std::vector<double> zf_sinrs(const std::vector<CMatrix>& effective, double noise_variance);

}  // namespace fdran
