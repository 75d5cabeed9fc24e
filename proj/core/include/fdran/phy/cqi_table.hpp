// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "fdran/common/rational.hpp"

namespace fdran {

struct CqiEntry {
  int index = 0;
  int modulation_order = 0;   // bits per symbol
  int code_rate_x1024 = 0;
  double snr_threshold_db = 0.0;

  Rational code_rate() const { return Rational(code_rate_x1024, 1024); }
  double spectral_efficiency() const { return modulation_order * code_rate_x1024 / 1024.0; }
};

class CqiTable {
 public:
  /// 4-bit CQI table (QPSK/16QAM/64QAM) with AWGN thresholds for 10% BLER.
  static const CqiTable& standard();

  explicit CqiTable(std::vector<CqiEntry> entries);

  const CqiEntry& at(int cqi) const;
  int max_index() const { return static_cast<int>(entries_.size()); }
  const std::vector<CqiEntry>& entries() const { return entries_; }

 private:
  std::vector<CqiEntry> entries_;
};

/// Largest CQI whose threshold is <= snr_db, or 0 when none qualifies.
int real_cqi_db(double snr_db, const CqiTable& table);
/// Same, for a linear SNR. +inf maps to the top index.
int real_cqi(double snr_linear, const CqiTable& table);

}  // namespace fdran
