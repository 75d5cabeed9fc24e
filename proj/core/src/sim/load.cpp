// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/sim/load.hpp"

#include "common/int128.hpp"
#include "fdran/common/error.hpp"

namespace fdran {

std::string_view to_string(LoadClass c) { return c == LoadClass::kHeavy ? "heavy" : "light"; }

LoadClass classify_load(const std::vector<std::int64_t>& demands, const std::vector<std::int64_t>& jt_rates,
                        std::int64_t k) {
  if (demands.size() != jt_rates.size()) throw Error(ErrorCode::kDimensionMismatch, "demand/rate size mismatch");
  std::int64_t need = 0;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    if (demands[i] <= 0 || jt_rates[i] <= 0) continue;
    need += (demands[i] + jt_rates[i] - 1) / jt_rates[i];
    if (need > k) return LoadClass::kHeavy;
  }
  return LoadClass::kLight;
}

std::int64_t demand_from_buffer(std::int64_t buffer_bits, int t_sc, int numerology) {
  if (buffer_bits < 0 || t_sc < 1) throw Error(ErrorCode::kInvalidArgument, "bad buffer or period");
  // One slot lasts 1/(1000 * 2^mu) s.
  const std::int64_t per_second = 1000LL << numerology;
  const i128 num = static_cast<i128>(buffer_bits) * per_second;
  return static_cast<std::int64_t>((num + t_sc - 1) / t_sc);
}

}  // namespace fdran
