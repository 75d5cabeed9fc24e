// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fdran/sim/simulator.hpp"
#include "json.hpp"

namespace fdran::cli {

/// Everything a run needs. JSON schema (all keys optional, unknown keys rejected):
///   preset: "paper-3bs" | "tiny"   base values, applied before the other keys
///   output_dir: string
///   seeds: [u64...]                 episode seeds; default [seed]
///   network: { seed, samples, subcarriers, eval_subcarriers, history_stride,
///              grid: {origin: [x,y,z], spacing: [x,y,z], counts: [nx,ny,nz]},
///              bs: [[x,y,z], ...],
///              phy: { n_tx, n_rx, noise_variance, alpha, numerology, overhead, max_layers,
///                     channel: { ref_gain, pathloss_exponent, min_paths, max_paths, max_delay_s,
///                                k_factor_db_min, k_factor_db_max, angle_spread_deg, doppler_hz,
///                                sinusoids } } }
///   sim: { users, d1, d2, d3, t_rp, t_sc, independent, csi_delay, power_mw, eta_min, lambda,
///          arrival_min_bits, arrival_max_bits, arrival_scale, arrival_jitter, episode_slots,
///          scheme: "feedback-free" | "pmi" | "optimal", coop: "single" | "pair" | "flexible",
///          pair: [a, b], seed }
///   solver: { n_flip, pump_iterations, node_limit, time_limit_ms }
struct RunConfig {
  std::string preset;
  SimConfig sim;
  std::filesystem::path output_dir = "fdran-out";
  std::vector<std::uint64_t> seeds;
};

/// Throws Error(kConfigError) on unknown keys, wrong types or invalid values.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig preset_run_config(const std::string& name);

/// Fully resolved configuration; parse_run_config(to_json(c)) reproduces c.
nlohmann::json to_json(const RunConfig& c);
/// FNV-1a of the canonical JSON dump, output_dir excluded.
std::uint64_t config_hash(const RunConfig& c);

std::string hex64(std::uint64_t v);

}  // namespace fdran::cli
