// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/phy/cqi_table.hpp"

#include <cmath>
#include <string>

#include "fdran/common/error.hpp"

namespace fdran {

const CqiTable& CqiTable::standard() {
  static const CqiTable table({
      {1, 2, 78, -6.936},   {2, 2, 120, -5.147},  {3, 2, 193, -3.180},
      {4, 2, 308, -1.253},  {5, 2, 449, 0.761},   {6, 2, 602, 2.699},
      {7, 4, 378, 4.694},   {8, 4, 490, 6.525},   {9, 4, 616, 8.573},
      {10, 6, 466, 10.366}, {11, 6, 567, 12.289}, {12, 6, 666, 14.173},
      {13, 6, 772, 15.888}, {14, 6, 873, 17.814}, {15, 6, 948, 19.829},
  });
  return table;
}

CqiTable::CqiTable(std::vector<CqiEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(ErrorCode::kEmptyInput, "CQI table is empty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const CqiEntry& e = entries_[i];
    if (e.index != static_cast<int>(i) + 1) throw Error(ErrorCode::kConfigError, "CQI indices must be 1..n");
    if (e.modulation_order != 2 && e.modulation_order != 4 && e.modulation_order != 6) {
      throw Error(ErrorCode::kConfigError, "unsupported modulation order " + std::to_string(e.modulation_order));
    }
    if (e.code_rate_x1024 <= 0 || e.code_rate_x1024 > 1024) {
      throw Error(ErrorCode::kConfigError, "code rate out of (0, 1]");
    }
    if (i > 0) {
      const CqiEntry& p = entries_[i - 1];
      if (e.modulation_order * e.code_rate_x1024 <= p.modulation_order * p.code_rate_x1024 ||
          e.snr_threshold_db <= p.snr_threshold_db) {
        throw Error(ErrorCode::kConfigError, "CQI entries must be strictly increasing");
      }
    }
  }
}

const CqiEntry& CqiTable::at(int cqi) const {
  if (cqi < 1 || cqi > max_index()) throw Error(ErrorCode::kInvalidArgument, "CQI index out of range");
  return entries_[static_cast<std::size_t>(cqi - 1)];
}

int real_cqi_db(double snr_db, const CqiTable& table) {
  if (std::isnan(snr_db)) return 0;
  int best = 0;
  for (const CqiEntry& e : table.entries()) {
    if (e.snr_threshold_db <= snr_db) best = e.index;
  }
  return best;
}

int real_cqi(double snr_linear, const CqiTable& table) {
  if (!(snr_linear > 0.0)) return 0;
  if (std::isinf(snr_linear)) return table.max_index();
  return real_cqi_db(10.0 * std::log10(snr_linear), table);
}

}  // namespace fdran
