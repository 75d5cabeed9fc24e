// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "fdran/common/error.hpp"
#include "fdran/common/fnv.hpp"
#include "fdran/ffmap/rate_map.hpp"
#include "fdran/ilp/model.hpp"
#include "fdran/sched/heavy.hpp"
#include "fdran/sim/load.hpp"
#include "fdran/sim/metrics_io.hpp"
#include "fdran/sim/resource_map.hpp"
#include "fdran/tsra/tsra.hpp"

namespace fdran::cli {
namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kConfigError, "cannot write " + path.string());
  return f;
}

std::uint64_t file_hash(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return fnv1a(ss.str());
}

void write_manifest(const std::filesystem::path& dir, json manifest) {
  manifest["tool"] = "fdran";
  manifest["version"] = kVersion;
  auto f = open_out(dir / "manifest.json");
  f << manifest.dump(2) << '\n';
}

std::string bs_list(CoopMask mask) {
  std::string s;
  for (int b = 0; b < 32; ++b) {
    if (mask & (CoopMask{1} << b)) {
      if (!s.empty()) s += '|';
      s += std::to_string(b);
    }
  }
  return s;
}

void write_resource_map(const ResourceMap& map, const std::filesystem::path& path) {
  auto f = open_out(path);
  f << "subcarrier,user_id,bs\n";
  for (std::size_t k = 0; k < map.subcarriers.size(); ++k) {
    const auto& u = map.subcarriers[k];
    f << k << ',';
    if (u.user_id >= 0) f << u.user_id;
    f << ',' << bs_list(u.mask) << '\n';
  }
}

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::kConfigError, where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
      throw Error(ErrorCode::kConfigError, "unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw Error(ErrorCode::kConfigError, "missing '" + std::string(key) + "' in " + where);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::kConfigError, "bad value for '" + std::string(key) + "' in " + where);
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

// An instance is either one JSON document or JSON lines: a header line with
// the scalar keys followed by one user object per line.
json load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return json::parse(text);
  } catch (const json::exception&) {
  }
  json inst = json::object();
  json users = json::array();
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kConfigError, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!rec.is_object()) throw Error(ErrorCode::kConfigError, path.string() + ": every line must be an object");
    if (rec.contains("K")) {
      for (auto& [key, value] : rec.items()) inst[key] = value;
    } else {
      users.push_back(std::move(rec));
    }
  }
  if (!users.empty()) inst["users"] = users;
  return inst;
}

double percentile(std::vector<std::int64_t> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(v.size() - 1) + 0.5));
  return static_cast<double>(v[idx]);
}

int schedule_heavy(const json& inst, const ScheduleOptions& opt, std::ostream& out) {
  require_keys(inst, {"K", "M", "eta_min", "users"}, "heavy instance");
  const auto k = get<std::int64_t>(inst, "K", "heavy instance");
  const int m = get_or<int>(inst, "M", 1, "heavy instance");
  const double eta_min = get_or<double>(inst, "eta_min", 0.1, "heavy instance");
  if (k < 0 || m < 1 || m > 16) throw Error(ErrorCode::kConfigError, "need K >= 0 and 1 <= M <= 16");
  std::vector<UserDemand> users;
  for (const auto& u : get<json>(inst, "users", "heavy instance")) {
    require_keys(u, {"id", "weight", "demand", "rate"}, "heavy user");
    users.push_back({get<int>(u, "id", "heavy user"), get<double>(u, "weight", "heavy user"),
                     get<std::int64_t>(u, "demand", "heavy user"), get<std::int64_t>(u, "rate", "heavy user")});
  }
  for (const auto& u : users) {
    try {
      u.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfigError, e.what());
    }
  }
  const auto alloc = greedy_schedule(users, k, eta_min);
  std::filesystem::create_directories(opt.out_dir);
  {
    auto f = open_out(opt.out_dir / "allocation.csv");
    f << std::setprecision(12) << "user_id,weight,demand_bps,rate_bps,required,mandatory,subcarriers,eta\n";
    for (std::size_t i = 0; i < users.size(); ++i) {
      const auto& u = users[i];
      f << u.user_id << ',' << u.weight << ',' << u.demand_rate << ',' << u.rate_per_subcarrier << ','
        << u.required_subcarriers() << ',' << alloc.mandatory[i] << ',' << alloc.subcarriers[i] << ','
        << alloc.satisfaction[i] << '\n';
    }
  }
  const CoopMask all = (CoopMask{1} << m) - 1;
  std::vector<UserAllocation> segs;
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (alloc.subcarriers[i] > 0) segs.push_back({users[i].user_id, {{all, alloc.subcarriers[i]}}});
  }
  write_resource_map(build_resource_map(std::move(segs), k), opt.out_dir / "resource_map.csv");
  out << std::setprecision(12) << "V=" << alloc.objective << '\n';
  write_manifest(opt.out_dir, {{"command", "schedule"}, {"mode", "heavy"}, {"instance_hash", hex64(fnv1a(inst.dump()))}});
  return kExitOk;
}

int schedule_light(const json& inst, const ScheduleOptions& opt, std::ostream& out) {
  require_keys(inst, {"K", "M", "power_mw", "lambda", "users"}, "light instance");
  const auto k = get<std::int64_t>(inst, "K", "light instance");
  const int m = get<int>(inst, "M", "light instance");
  const double power = get_or<double>(inst, "power_mw", 1.0, "light instance");
  const double lambda = get_or<double>(inst, "lambda", 1000.0, "light instance");
  if (m < 1 || m > 16) throw Error(ErrorCode::kConfigError, "need 1 <= M <= 16");
  const auto full = static_cast<std::size_t>((CoopMask{1} << m) - 1);
  std::vector<LightUser> users;
  std::vector<std::int64_t> demands, jt;
  for (const auto& u : get<json>(inst, "users", "light instance")) {
    require_keys(u, {"id", "demand", "rates"}, "light user");
    LightUser lu{get<int>(u, "id", "light user"), get<std::int64_t>(u, "demand", "light user"),
                 get<std::vector<std::int64_t>>(u, "rates", "light user")};
    if (lu.rates.size() != full) {
      throw Error(ErrorCode::kConfigError, "user " + std::to_string(lu.user_id) + " needs 2^M - 1 rates");
    }
    demands.push_back(lu.demand);
    jt.push_back(lu.rates.back());
    users.push_back(std::move(lu));
  }
  if (classify_load(demands, jt, k) == LoadClass::kHeavy && !opt.force) {
    throw Error(ErrorCode::kConfigError, "instance is heavy-load under JT of all BSs; use the heavy mode or --force");
  }
  const auto model = build_ilp(users, m, k, power, lambda);
  TsraOptions topt;
  topt.bnb.limits.time_limit_ms = opt.time_limit_ms;
  topt.bnb.limits.node_limit = opt.node_limit;
  const auto res = tsra(model, topt);
  const auto segs = assignment_segments(model, res.best);
  std::filesystem::create_directories(opt.out_dir);
  std::vector<UserAllocation> allocs;
  {
    auto f = open_out(opt.out_dir / "allocation.csv");
    f << "user_id,bs,subcarriers\n";
    for (std::size_t i = 0; i < users.size(); ++i) {
      UserAllocation a{users[i].user_id, {}};
      for (const auto& [mask, count] : segs[i]) {
        if (count <= 0) continue;
        f << users[i].user_id << ',' << bs_list(mask) << ',' << count << '\n';
        a.segments.push_back({mask, count});
      }
      allocs.push_back(std::move(a));
    }
  }
  write_resource_map(build_resource_map(std::move(allocs), k), opt.out_dir / "resource_map.csv");
  out << std::setprecision(12) << "e*=" << res.energy << " stage1=" << res.stage1_energy
      << " proven=" << (res.proven_optimal ? "yes" : "no") << " lower_bound=" << res.global_lower_bound
      << " nodes=" << res.nodes << '\n';
  write_manifest(opt.out_dir, {{"command", "schedule"}, {"mode", "light"}, {"instance_hash", hex64(fnv1a(inst.dump()))},
                               {"time_limit_ms", opt.time_limit_ms}, {"node_limit", opt.node_limit}});
  return res.proven_optimal ? kExitOk : kExitLimit;
}

}  // namespace

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kConfigError:
    case ErrorCode::kOutOfGrid:
    case ErrorCode::kIncompleteRateMap:
    case ErrorCode::kFormatError:
      return kExitConfig;
    case ErrorCode::kFairnessInfeasible:
    case ErrorCode::kCapacityExceeded:
      return kExitInfeasible;
    case ErrorCode::kPumpFailed:
      return kExitPumpFailed;
    default:
      return kExitFailure;
  }
}

int cmd_build_map(const RunConfig& cfg, const MapOptions& opt, std::ostream& out) {
  const auto& net = cfg.sim.network;
  net.validate();
  const auto path = opt.out.empty() ? cfg.output_dir / "map.bin" : opt.out;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto map = build_map(net, CqiTable::standard(), std::max(1, opt.jobs));
  save_map(map, path);
  const auto hash = file_hash(path);
  out << "cells=" << map.grid().cell_count() << " coop_sets_per_cell=" << map.masks_per_cell()
      << " entries=" << map.entry_count() << " file_hash=" << hex64(hash) << '\n';
  out << "coop_set,rate_p10_bps,rate_p50_bps,rate_p90_bps,mean_layers,cqi0_fraction\n";
  for (CoopMask mask = 1; mask <= static_cast<CoopMask>(map.masks_per_cell()); ++mask) {
    std::vector<std::int64_t> rates;
    double layers = 0.0;
    int zero = 0;
    for (std::uint32_t c = 0; c < map.grid().cell_count(); ++c) {
      const auto& p = map.at(c, mask);
      rates.push_back(p.rate_per_subcarrier);
      layers += p.layers;
      zero += p.cqi_em == 0;
    }
    const double cells = map.grid().cell_count();
    out << bs_list(mask) << ',' << percentile(rates, 0.1) << ',' << percentile(rates, 0.5) << ','
        << percentile(rates, 0.9) << ',' << std::setprecision(4) << layers / cells << ',' << zero / cells
        << std::setprecision(6) << '\n';
  }
  if (path.has_parent_path()) {
    write_manifest(path.parent_path(), {{"command", "build-map"},
                                        {"config_hash", hex64(config_hash(cfg))},
                                        {"map_config_hash", hex64(net.hash())},
                                        {"map_file", path.filename().string()},
                                        {"map_file_hash", hex64(hash)},
                                        {"config", to_json(cfg)}});
  }
  return kExitOk;
}

int cmd_schedule(const std::string& mode, const std::filesystem::path& instance, const ScheduleOptions& opt,
                 std::ostream& out) {
  const auto inst = load_instance(instance);
  if (mode == "heavy") return schedule_heavy(inst, opt, out);
  if (mode == "light") return schedule_light(inst, opt, out);
  throw Error(ErrorCode::kConfigError, "mode must be heavy or light");
}

int cmd_simulate(const RunConfig& cfg, const SimulateOptions& opt, std::ostream& out) {
  cfg.sim.validate();
  std::vector<std::uint64_t> seeds = cfg.seeds;
  if (seeds.empty()) seeds.push_back(cfg.sim.seed);
  std::filesystem::create_directories(cfg.output_dir);

  RateMap map;
  const RateMap* map_ptr = nullptr;
  if (cfg.sim.scheme == Scheme::kFeedbackFree) {
    if (!opt.map.empty()) {
      map = load_map(opt.map);
      if (map.config_hash() != cfg.sim.network.hash()) {
        throw Error(ErrorCode::kConfigError, "map " + opt.map.string() + " was built for a different network");
      }
    } else {
      map = build_map(cfg.sim.network, CqiTable::standard(), std::max(1, opt.jobs));
    }
    map_ptr = &map;
  }

  std::vector<EpisodeMetrics> results(seeds.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= seeds.size()) return;
      try {
        SimConfig sc = cfg.sim;
        sc.seed = seeds[i];
        results[i] = run_episode(sc, map_ptr);
        auto f = open_out(cfg.output_dir / ("episode_" + std::to_string(seeds[i]) + ".csv"));
        write_slot_csv(results[i], f);
        if (opt.dispatch_log) {
          auto d = open_out(cfg.output_dir / ("dispatch_" + std::to_string(seeds[i]) + ".csv"));
          write_dispatch_csv(results[i], d);
        }
        results[i].records.clear();  // the series is on disk; keep memory flat for big sweeps
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next = seeds.size();
      }
    }
  };
  const int jobs = std::clamp(opt.jobs, 1, static_cast<int>(seeds.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  {
    auto f = open_out(cfg.output_dir / "aggregate.csv");
    write_aggregate_header(f);
    for (std::size_t i = 0; i < seeds.size(); ++i) write_aggregate_row(seeds[i], results[i], f);
  }
  double v = 0.0, e = 0.0, bad = 0.0, heavy = 0.0;
  bool all_proven = true;
  for (const auto& r : results) {
    v += r.v;
    e += r.energy_per_slot;
    bad += r.bad_cqi_ratio;
    heavy += r.heavy_fraction;
    for (const auto& d : r.dispatch) all_proven = all_proven && d.proven_optimal;
  }
  const double n = static_cast<double>(results.size());
  out << std::setprecision(6) << "episodes=" << results.size() << " mean_V=" << v / n
      << " mean_energy_per_slot_mw=" << e / n << " mean_bad_cqi_ratio=" << bad / n
      << " mean_heavy_fraction=" << heavy / n << " all_decisions_proven=" << (all_proven ? "yes" : "no") << '\n';

  json outputs = json::array();
  for (auto s : seeds) outputs.push_back("episode_" + std::to_string(s) + ".csv");
  outputs.push_back("aggregate.csv");
  write_manifest(cfg.output_dir, {{"command", "simulate"},
                                  {"config_hash", hex64(config_hash(cfg))},
                                  {"map_config_hash", hex64(cfg.sim.network.hash())},
                                  {"seeds", seeds},
                                  {"outputs", outputs},
                                  {"config", to_json(cfg)}});
  return kExitOk;
}

int cmd_verify(const VerifyCaps& caps, std::ostream& out, const VerifyHooks& hooks) {
  const auto report = run_verify(caps, hooks);
  out << report.table();
  return report.ok() ? kExitOk : kExitFailure;
}

}  // namespace fdran::cli
