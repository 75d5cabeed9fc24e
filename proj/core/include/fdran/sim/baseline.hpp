// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "fdran/ffmap/rate_map.hpp"

namespace fdran {

enum class Scheme : std::uint8_t { kFeedbackFree, kPmiFeedback, kOptimalFeedback };
enum class CoopRestriction : std::uint8_t { kSingleBs, kFixedPair, kFlexible };

std::string_view to_string(Scheme s);
std::string_view to_string(CoopRestriction c);
std::optional<Scheme> parse_scheme(std::string_view s);
std::optional<CoopRestriction> parse_coop(std::string_view s);

/// Size-16 codebook of dim x layers matrices with orthogonal columns and unit
/// Frobenius norm. Entry c uses DFT beams c * dim / 16 + l, l < layers.
std::vector<CMatrix> pmi_codebook(int dim, int layers);

/// Parameters a feedback scheme derives from a reported (possibly stale)
/// channel of the cooperation set. Layer count maximizes the rate.
TransmissionParams baseline_params(Scheme scheme, const std::vector<const ChannelSet*>& reported,
                                   const PhyConfig& cfg, const CqiTable& table);

/// Index of the PMI codebook entry chosen for `layers` (highest CQI, lowest index on ties).
int select_pmi(const std::vector<const ChannelSet*>& reported, int layers, const PhyConfig& cfg,
               const CqiTable& table);

}  // namespace fdran
