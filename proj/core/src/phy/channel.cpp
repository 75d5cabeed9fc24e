// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/phy/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fdran/common/error.hpp"
#include "fdran/common/random.hpp"

namespace fdran {
namespace {

constexpr double kPi = std::numbers::pi;

struct PathGeometry {
  double aod = 0.0;
  double aoa = 0.0;
  double delay = 0.0;
  double power = 0.0;
  double los_amplitude = 0.0;  // deterministic part, direct path only
  double los_phase = 0.0;
  double scatter_amplitude = 0.0;
  std::vector<double> doppler;  // per sinusoid, Hz
  std::vector<double> phase;    // per sinusoid, rad
};

std::vector<PathGeometry> path_geometry(const Vec3& loc, const BsGeometry& bs, const ChannelModelParams& m,
                                        std::uint64_t seed) {
  Rng rng(hash_keys({seed, coord_key(loc.x), coord_key(loc.y), coord_key(loc.z),
                     static_cast<std::uint64_t>(bs.id), 0x9a7bULL}));
  const int span = std::max(0, m.max_paths - m.min_paths);
  const int paths = m.min_paths + static_cast<int>(rng.below(static_cast<std::uint64_t>(span) + 1));

  const double dx = loc.x - bs.position.x;
  const double dy = loc.y - bs.position.y;
  const double los_aod = std::atan2(dy, dx);
  const double los_aoa = los_aod + kPi;
  const double spread = m.angle_spread_deg * kPi / 180.0;

  std::vector<PathGeometry> out(static_cast<std::size_t>(paths));
  double total = 0.0;
  for (int p = 0; p < paths; ++p) {
    PathGeometry& g = out[static_cast<std::size_t>(p)];
    if (p == 0) {
      g.aod = los_aod;
      g.aoa = los_aoa;
      g.delay = 0.0;
      g.power = 1.0;
    } else {
      g.aod = los_aod + rng.uniform(-spread, spread);
      g.aoa = los_aoa + rng.uniform(-spread, spread);
      g.delay = rng.uniform(0.0, m.max_delay_s);
      g.power = rng.uniform(0.05, 1.0) * std::exp(-g.delay / std::max(m.max_delay_s, 1e-12));
    }
    total += g.power;
  }
  const double k_db = rng.uniform(m.k_factor_db_min, m.k_factor_db_max);
  const double k_lin = std::pow(10.0, k_db / 10.0);
  const int q = std::max(1, m.sinusoids);
  for (int p = 0; p < paths; ++p) {
    PathGeometry& g = out[static_cast<std::size_t>(p)];
    g.power /= total;
    double scatter_power = g.power;
    if (p == 0) {
      g.los_amplitude = std::sqrt(g.power * k_lin / (k_lin + 1.0));
      g.los_phase = rng.uniform(0.0, 2.0 * kPi);
      scatter_power = g.power / (k_lin + 1.0);
    }
    g.scatter_amplitude = std::sqrt(scatter_power / q);
    g.doppler.resize(static_cast<std::size_t>(q));
    g.phase.resize(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) {
      // Arrival angles on a jittered uniform grid keep the spectrum close to Jakes.
      const double theta = 2.0 * kPi * (i + rng.uniform()) / q;
      g.doppler[static_cast<std::size_t>(i)] = m.doppler_hz * std::cos(theta);
      g.phase[static_cast<std::size_t>(i)] = rng.uniform(0.0, 2.0 * kPi);
    }
  }
  return out;
}

cd path_gain(const PathGeometry& g, double t) {
  cd acc(0.0, 0.0);
  for (std::size_t i = 0; i < g.doppler.size(); ++i) {
    // Reduce the phase argument before scaling by 2*pi to keep precision at large t.
    const double cycles = g.doppler[i] * t;
    const double arg = 2.0 * kPi * (cycles - std::floor(cycles)) + g.phase[i];
    acc += cd(std::cos(arg), std::sin(arg));
  }
  acc *= g.scatter_amplitude;
  if (g.los_amplitude > 0.0) acc += std::polar(g.los_amplitude, g.los_phase);
  return acc;
}

}  // namespace

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void PhyConfig::validate() const {
  if (n_tx < 1 || n_rx < 1) throw Error(ErrorCode::kConfigError, "antenna counts must be >= 1");
  if (!(noise_variance > 0.0)) throw Error(ErrorCode::kConfigError, "noise_variance must be > 0");
  if (!(alpha > 0.0)) throw Error(ErrorCode::kConfigError, "alpha must be > 0");
  if (!(overhead >= 0.0 && overhead < 1.0)) throw Error(ErrorCode::kConfigError, "overhead must be in [0, 1)");
  if (numerology < 0 || numerology > 6) throw Error(ErrorCode::kConfigError, "numerology must be in 0..6");
  if (max_layers < 1) throw Error(ErrorCode::kConfigError, "max_layers must be >= 1");
  if (channel.min_paths < 1 || channel.max_paths < channel.min_paths) {
    throw Error(ErrorCode::kConfigError, "path count range invalid");
  }
  if (!(channel.ref_gain > 0.0)) throw Error(ErrorCode::kConfigError, "ref_gain must be > 0");
  if (channel.doppler_hz < 0.0 || channel.max_delay_s < 0.0) {
    throw Error(ErrorCode::kConfigError, "doppler and delay must be non-negative");
  }
}

double large_scale_gain(const Vec3& location, const BsGeometry& bs, const ChannelModelParams& model) {
  const double d = std::max(distance(location, bs.position), 1.0);
  return model.ref_gain * std::pow(d, -model.pathloss_exponent);
}

CVector steering_vector(int antennas, double angle_rad) {
  CVector a(antennas);
  const double s = std::sin(angle_rad);
  for (int i = 0; i < antennas; ++i) a(i) = std::polar(1.0, kPi * i * s);
  return a;
}

ChannelSet gen_channel(const Vec3& location, const BsGeometry& bs, const PhyConfig& cfg,
                       int total_subcarriers, std::span<const int> subcarrier_indices,
                       std::uint64_t seed, std::int64_t slot) {
  if (total_subcarriers < 1) throw Error(ErrorCode::kInvalidArgument, "subcarriers must be >= 1");
  const auto paths = path_geometry(location, bs, cfg.channel, seed);
  const int np = static_cast<int>(paths.size());
  const double g = large_scale_gain(location, bs, cfg.channel);
  const double t = static_cast<double>(slot) * cfg.slot_duration_s();
  const double df = cfg.subcarrier_spacing_hz();

  CMatrix a_rx(cfg.n_rx, np);
  CMatrix a_tx_h(np, cfg.n_tx);
  std::vector<cd> alpha(static_cast<std::size_t>(np));
  for (int p = 0; p < np; ++p) {
    const auto& pg = paths[static_cast<std::size_t>(p)];
    a_rx.col(p) = steering_vector(cfg.n_rx, pg.aoa);
    a_tx_h.row(p) = steering_vector(cfg.n_tx, pg.aod).adjoint();
    alpha[static_cast<std::size_t>(p)] = std::sqrt(g) * path_gain(pg, t);
  }

  ChannelSet out;
  out.bs_id = bs.id;
  out.slot = slot;
  out.large_scale_gain = g;
  out.entries.reserve(subcarrier_indices.size());
  CVector coeff(np);
  for (int k : subcarrier_indices) {
    if (k < 0 || k >= total_subcarriers) throw Error(ErrorCode::kInvalidArgument, "subcarrier index out of range");
    for (int p = 0; p < np; ++p) {
      const double phase = -2.0 * kPi * k * df * paths[static_cast<std::size_t>(p)].delay;
      coeff(p) = alpha[static_cast<std::size_t>(p)] * std::polar(1.0, phase);
    }
    out.entries.emplace_back(a_rx * coeff.asDiagonal() * a_tx_h);
  }
  return out;
}

ChannelSet gen_channel(const Vec3& location, const BsGeometry& bs, const PhyConfig& cfg,
                       int subcarriers, std::uint64_t seed, std::int64_t slot) {
  if (subcarriers < 1) throw Error(ErrorCode::kInvalidArgument, "subcarriers must be >= 1");
  std::vector<int> all(static_cast<std::size_t>(subcarriers));
  std::iota(all.begin(), all.end(), 0);
  return gen_channel(location, bs, cfg, subcarriers, all, seed, slot);
}

}  // namespace fdran
