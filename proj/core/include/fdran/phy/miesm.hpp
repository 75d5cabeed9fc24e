// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "fdran/phy/cqi_table.hpp"

namespace fdran {

/// BICM capacity of Gray-mapped square QAM in bits/symbol (orders 2, 4, 6).
double bicm_capacity(double snr_linear, int modulation_order);

/// Inverse of bicm_capacity on [0, order).
double bicm_capacity_inverse(double capacity, int modulation_order);

/// MIESM effective SNR alpha * f^-1(mean f(s / alpha)). Throws EmptyInput.
double effective_snr(std::span<const double> sinrs, double alpha, int modulation_order);

/// Highest CQI whose threshold is met by the effective SNR evaluated with that
/// CQI's modulation order. 0 when none is met.
int determine_cqi(std::span<const double> sinrs, double alpha, const CqiTable& table);

}  // namespace fdran
