// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/phy/rate.hpp"

#include "fdran/common/error.hpp"

namespace fdran {

Rational overhead_fraction(const PhyConfig& cfg) { return Rational::approximate(cfg.overhead, 1'000'000); }

Rational achievable_rate_exact(int layers, int cqi_em, int cqi_re, std::int64_t n_subcarriers,
                               const PhyConfig& cfg, const CqiTable& table) {
  if (n_subcarriers < 0 || layers < 0) throw Error(ErrorCode::kInvalidArgument, "negative rate input");
  if (cqi_em < 1 || cqi_em > cqi_re || n_subcarriers == 0 || layers == 0) return Rational(0);
  const CqiEntry& e = table.at(cqi_em);
  // Symbols per second per subcarrier: 14 OFDM symbols per slot.
  const std::int64_t symbols = 14'000LL << cfg.numerology;
  const Rational bits(static_cast<std::int64_t>(layers) * e.modulation_order * n_subcarriers * symbols);
  return bits * e.code_rate() * (Rational(1) - overhead_fraction(cfg));
}

double achievable_rate(int layers, int cqi_em, int cqi_re, std::int64_t n_subcarriers, const PhyConfig& cfg,
                       const CqiTable& table) {
  return achievable_rate_exact(layers, cqi_em, cqi_re, n_subcarriers, cfg, table).to_double();
}

std::int64_t rate_per_subcarrier_bps(int layers, int cqi_em, const PhyConfig& cfg, const CqiTable& table) {
  return achievable_rate_exact(layers, cqi_em, cqi_em, 1, cfg, table).floor();
}

std::int64_t bits_per_slot(int layers, int cqi_em, int cqi_re, std::int64_t n_subcarriers, const PhyConfig& cfg,
                           const CqiTable& table) {
  const Rational slot(1, 1000LL << cfg.numerology);
  return (achievable_rate_exact(layers, cqi_em, cqi_re, n_subcarriers, cfg, table) * slot).floor();
}

}  // namespace fdran
