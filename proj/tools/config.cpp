// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>

#include "fdran/common/error.hpp"
#include "fdran/common/fnv.hpp"
#include "fdran/sim/presets.hpp"

namespace fdran::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::kConfigError, msg); }

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) fail(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) fail("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    fail("bad value for '" + std::string(key) + "' in " + where);
  }
}

Vec3 vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) fail(where + " must be [x, y, z]");
  try {
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
  } catch (const json::exception&) {
    fail(where + " must hold numbers");
  }
}

json vec3_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

void parse_channel(const json& j, ChannelModelParams& c) {
  const std::string w = "network.phy.channel";
  check_keys(j, {"ref_gain", "pathloss_exponent", "min_paths", "max_paths", "max_delay_s", "k_factor_db_min",
                 "k_factor_db_max", "angle_spread_deg", "doppler_hz", "sinusoids"}, w);
  read(j, "ref_gain", c.ref_gain, w);
  read(j, "pathloss_exponent", c.pathloss_exponent, w);
  read(j, "min_paths", c.min_paths, w);
  read(j, "max_paths", c.max_paths, w);
  read(j, "max_delay_s", c.max_delay_s, w);
  read(j, "k_factor_db_min", c.k_factor_db_min, w);
  read(j, "k_factor_db_max", c.k_factor_db_max, w);
  read(j, "angle_spread_deg", c.angle_spread_deg, w);
  read(j, "doppler_hz", c.doppler_hz, w);
  read(j, "sinusoids", c.sinusoids, w);
}

void parse_phy(const json& j, PhyConfig& p) {
  const std::string w = "network.phy";
  check_keys(j, {"n_tx", "n_rx", "noise_variance", "alpha", "numerology", "overhead", "max_layers", "channel"}, w);
  read(j, "n_tx", p.n_tx, w);
  read(j, "n_rx", p.n_rx, w);
  read(j, "noise_variance", p.noise_variance, w);
  read(j, "alpha", p.alpha, w);
  read(j, "numerology", p.numerology, w);
  read(j, "overhead", p.overhead, w);
  read(j, "max_layers", p.max_layers, w);
  if (j.contains("channel")) parse_channel(j["channel"], p.channel);
}

void parse_network(const json& j, MapBuildConfig& n) {
  const std::string w = "network";
  check_keys(j, {"seed", "samples", "subcarriers", "eval_subcarriers", "history_stride", "grid", "bs", "phy"}, w);
  read(j, "seed", n.seed, w);
  read(j, "samples", n.samples, w);
  read(j, "subcarriers", n.total_subcarriers, w);
  read(j, "eval_subcarriers", n.eval_subcarriers, w);
  read(j, "history_stride", n.history_stride, w);
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    check_keys(g, {"origin", "spacing", "counts"}, "network.grid");
    if (g.contains("origin")) n.grid.origin = vec3(g["origin"], "network.grid.origin");
    if (g.contains("spacing")) n.grid.spacing = vec3(g["spacing"], "network.grid.spacing");
    if (g.contains("counts")) {
      const auto& c = g["counts"];
      if (!c.is_array() || c.size() != 3) fail("network.grid.counts must be [nx, ny, nz]");
      for (std::size_t i = 0; i < 3; ++i) {
        if (!c[i].is_number_integer() || c[i].get<std::int64_t>() < 0) fail("grid counts must be integers >= 0");
        n.grid.counts[i] = c[i].get<std::uint32_t>();
      }
    }
  }
  if (j.contains("bs")) {
    const auto& b = j["bs"];
    if (!b.is_array()) fail("network.bs must be a list of positions");
    n.bs.clear();
    for (std::size_t i = 0; i < b.size(); ++i) {
      n.bs.push_back({static_cast<int>(i), vec3(b[i], "network.bs[" + std::to_string(i) + "]")});
    }
  }
  if (j.contains("phy")) parse_phy(j["phy"], n.phy);
}

void parse_sim(const json& j, SimConfig& s) {
  const std::string w = "sim";
  check_keys(j, {"users", "d1", "d2", "d3", "t_rp", "t_sc", "independent", "csi_delay", "power_mw", "eta_min",
                 "lambda", "arrival_min_bits", "arrival_max_bits", "arrival_scale", "arrival_jitter", "episode_slots",
                 "scheme", "coop", "pair", "seed"}, w);
  read(j, "users", s.users, w);
  read(j, "d1", s.d1, w);
  read(j, "d2", s.d2, w);
  read(j, "d3", s.d3, w);
  read(j, "t_rp", s.t_rp, w);
  read(j, "t_sc", s.t_sc, w);
  read(j, "independent", s.independent, w);
  read(j, "csi_delay", s.csi_delay, w);
  read(j, "power_mw", s.power_mw, w);
  read(j, "eta_min", s.eta_min, w);
  read(j, "lambda", s.lambda, w);
  read(j, "arrival_min_bits", s.arrival_min_bits, w);
  read(j, "arrival_max_bits", s.arrival_max_bits, w);
  read(j, "arrival_scale", s.arrival_scale, w);
  read(j, "arrival_jitter", s.arrival_jitter, w);
  read(j, "episode_slots", s.episode_slots, w);
  read(j, "seed", s.seed, w);
  if (j.contains("scheme")) {
    std::string v;
    read(j, "scheme", v, w);
    const auto p = parse_scheme(v);
    if (!p) fail("unknown scheme '" + v + "' (feedback-free, pmi, optimal)");
    s.scheme = *p;
  }
  if (j.contains("coop")) {
    std::string v;
    read(j, "coop", v, w);
    const auto p = parse_coop(v);
    if (!p) fail("unknown coop restriction '" + v + "' (single, pair, flexible)");
    s.coop = *p;
  }
  if (j.contains("pair")) {
    std::vector<int> pair;
    read(j, "pair", pair, w);
    if (pair.size() != 2) fail("sim.pair must be [a, b]");
    s.pair_a = pair[0];
    s.pair_b = pair[1];
  }
}

void parse_solver(const json& j, SimConfig& s) {
  const std::string w = "solver";
  check_keys(j, {"n_flip", "pump_iterations", "node_limit", "time_limit_ms"}, w);
  read(j, "n_flip", s.n_flip, w);
  read(j, "pump_iterations", s.pump_iterations, w);
  read(j, "node_limit", s.node_limit, w);
  read(j, "time_limit_ms", s.time_limit_ms, w);
}

}  // namespace

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

RunConfig preset_run_config(const std::string& name) {
  RunConfig c;
  c.preset = name;
  c.sim = preset(name);
  return c;
}

RunConfig parse_run_config(const json& j) {
  check_keys(j, {"preset", "output_dir", "seeds", "network", "sim", "solver"}, "config");
  RunConfig c;
  if (j.contains("preset")) {
    std::string name;
    read(j, "preset", name, "config");
    c = preset_run_config(name);
  }
  if (j.contains("output_dir")) {
    std::string dir;
    read(j, "output_dir", dir, "config");
    c.output_dir = dir;
  }
  read(j, "seeds", c.seeds, "config");
  if (j.contains("network")) parse_network(j["network"], c.sim.network);
  if (j.contains("sim")) parse_sim(j["sim"], c.sim);
  if (j.contains("solver")) parse_solver(j["solver"], c.sim);
  c.sim.validate();
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail("malformed config " + path.string() + ": " + e.what());
  }
  return parse_run_config(j);
}

json to_json(const RunConfig& c) {
  const auto& s = c.sim;
  const auto& n = s.network;
  const auto& p = n.phy;
  const auto& ch = p.channel;
  json bs = json::array();
  for (const auto& b : n.bs) bs.push_back(vec3_json(b.position));
  json j;
  if (!c.preset.empty()) j["preset"] = c.preset;
  j["output_dir"] = c.output_dir.string();
  j["seeds"] = c.seeds;
  j["network"] = {
      {"seed", n.seed},
      {"samples", n.samples},
      {"subcarriers", n.total_subcarriers},
      {"eval_subcarriers", n.eval_subcarriers},
      {"history_stride", n.history_stride},
      {"grid", {{"origin", vec3_json(n.grid.origin)}, {"spacing", vec3_json(n.grid.spacing)},
                {"counts", {n.grid.counts[0], n.grid.counts[1], n.grid.counts[2]}}}},
      {"bs", bs},
      {"phy", {{"n_tx", p.n_tx}, {"n_rx", p.n_rx}, {"noise_variance", p.noise_variance}, {"alpha", p.alpha},
               {"numerology", p.numerology}, {"overhead", p.overhead}, {"max_layers", p.max_layers},
               {"channel", {{"ref_gain", ch.ref_gain}, {"pathloss_exponent", ch.pathloss_exponent},
                            {"min_paths", ch.min_paths}, {"max_paths", ch.max_paths},
                            {"max_delay_s", ch.max_delay_s}, {"k_factor_db_min", ch.k_factor_db_min},
                            {"k_factor_db_max", ch.k_factor_db_max}, {"angle_spread_deg", ch.angle_spread_deg},
                            {"doppler_hz", ch.doppler_hz}, {"sinusoids", ch.sinusoids}}}}}};
  j["sim"] = {{"users", s.users}, {"d1", s.d1}, {"d2", s.d2}, {"d3", s.d3}, {"t_rp", s.t_rp}, {"t_sc", s.t_sc},
              {"independent", s.independent}, {"csi_delay", s.csi_delay}, {"power_mw", s.power_mw},
              {"eta_min", s.eta_min}, {"lambda", s.lambda}, {"arrival_min_bits", s.arrival_min_bits},
              {"arrival_max_bits", s.arrival_max_bits}, {"arrival_scale", s.arrival_scale},
              {"arrival_jitter", s.arrival_jitter}, {"episode_slots", s.episode_slots},
              {"scheme", std::string(to_string(s.scheme))}, {"coop", std::string(to_string(s.coop))},
              {"pair", {s.pair_a, s.pair_b}}, {"seed", s.seed}};
  j["solver"] = {{"n_flip", s.n_flip}, {"pump_iterations", s.pump_iterations}, {"node_limit", s.node_limit},
                 {"time_limit_ms", s.time_limit_ms}};
  return j;
}

std::uint64_t config_hash(const RunConfig& c) {
  auto j = to_json(c);
  j.erase("output_dir");  // where results land does not change them
  return fnv1a(j.dump());
}

}  // namespace fdran::cli
