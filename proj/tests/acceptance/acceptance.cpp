// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "fdran/common/error.hpp"
#include "fdran/ffmap/rate_map.hpp"
#include "fdran/ilp/model.hpp"
#include "fdran/oracle/verify.hpp"
#include "fdran/phy/miesm.hpp"
#include "fdran/phy/rate.hpp"
#include "fdran/sched/heavy.hpp"
#include "fdran/sim/metrics_io.hpp"
#include "fdran/sim/presets.hpp"
#include "fdran/sim/simulator.hpp"
#include "fdran/tsra/pump.hpp"
#include "fdran/tsra/tsra.hpp"
#include "oracles.hpp"

using namespace fdran;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%-4s criterion %2d  %-34s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(),
              seconds_since(t0));
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Light instances shared by criteria 2-4.
std::vector<IlpModel> light_instances() {
  std::vector<IlpModel> out;
  for (std::uint64_t i = 0; i < 100; ++i) out.push_back(random_light_instance(1000 + i, 3, 3, 8));
  return out;
}

Outcome greedy_optimality() {
  int ok = 0;
  for (int i = 0; i < 200; ++i) {
    std::int64_t k = 0;
    const auto users = random_heavy_instance(static_cast<std::uint64_t>(5000 + i), 4, 12, &k);
    const double eta = i % 2 == 0 ? 0.0 : 0.1;
    const auto best = oracle::heavy_best_v(users, k, eta);
    try {
      const auto a = greedy_schedule(users, k, eta);
      if (best && std::fabs(a.objective - *best) <= 1e-9) ++ok;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kFairnessInfeasible && !best) ++ok;
    }
  }
  return {ok == 200, fmt("%.0f/200 match enumeration", ok)};
}

Outcome tsra_exactness(const std::vector<IlpModel>& models, std::vector<SolveResult>& results) {
  int ok = 0;
  for (const auto& m : models) {
    results.push_back(tsra(m));
    const auto& r = results.back();
    const auto best = oracle::light_min_units(m);
    if (best && r.proven_optimal && check_assignment(m, r.best).feasible && energy_units(m, r.best) == *best) ++ok;
  }
  return {ok == 100, fmt("%.0f/100 exact", ok)};
}

Outcome stage_ordering(const std::vector<IlpModel>& models, const std::vector<SolveResult>& results) {
  int ok = 0, strict_vs_jt = 0;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto& m = models[i];
    const auto& r = results[i];
    const double jt = static_cast<double>(oracle::jt_all_units(m)) * m.power;
    const auto single = oracle::single_bs_min_units(m);
    const bool single_ok = !single || r.energy <= static_cast<double>(*single) * m.power + 1e-9;
    if (r.stage1_energy >= r.energy - 1e-9 && r.energy <= jt + 1e-9 && single_ok) ++ok;
    if (r.energy < jt - 1e-9) ++strict_vs_jt;
  }
  return {ok == static_cast<int>(models.size()),
          fmt("%.0f/100 ordered, %.0f strictly below JT-of-all", ok, strict_vs_jt)};
}

Outcome pump_feasibility(const std::vector<IlpModel>& models) {
  int ok = 0, fallback = 0;
  for (const auto& m : models) {
    try {
      const auto p = feasibility_pump(m);
      if (check_assignment(m, p.assignment).feasible) ++ok;
      if (p.used_fallback) ++fallback;
    } catch (const Error&) {
    }
  }
  return {ok == 100, fmt("%.0f/100 feasible (%.0f via fallback)", ok, fallback)};
}

Outcome miesm_identity() {
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (int q : {2, 4, 6}) {
      for (double db = -10.0; db <= 30.0; db += 2.5) {
        const double s = std::pow(10.0, db / 10.0);
        const std::vector<double> sinrs(7, s);
        worst = std::max(worst, std::fabs(effective_snr(sinrs, alpha, q) - s) / s);
      }
    }
  }
  return {worst <= 1e-9, fmt("max relative error %.2e", worst)};
}

Outcome golden_rate() {
  PhyConfig cfg;  // numerology 0, overhead 0.14
  const Rational r = achievable_rate_exact(2, 15, 15, 10, cfg, CqiTable::standard());
  return {r == Rational(5350275, 4), "rate = " + r.str() + " bits/s"};
}

SimConfig tiny(std::uint64_t seed) {
  auto c = preset("tiny");
  c.seed = seed;
  c.episode_slots = 100;
  return c;
}

Outcome conservation(const RateMap& map) {
  int ok = 0;
  std::int64_t overlaps = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto cfg = tiny(seed);
    cfg.arrival_scale = 0.25 + 0.75 * static_cast<double>(seed % 4) / 3.0;  // light and heavy periods
    const auto m = run_episode(cfg, &map);
    std::int64_t arrived = 0, delivered = 0;
    for (const auto& r : m.records) {
      arrived += r.arrived;
      delivered += r.delivered;
    }
    overlaps += m.overlap_violations;
    if (m.arrived == m.delivered + m.residual && m.dropped == 0 && arrived == m.arrived &&
        delivered == m.delivered && m.overlap_violations == 0) {
      ++ok;
    }
  }
  return {ok == 100 && overlaps == 0, fmt("%.0f/100 episodes balanced, %.0f double-bookings", ok, overlaps)};
}

struct Paired {
  std::vector<double> ff, opt;
  std::vector<double> ff_bad, opt_bad;
};

Paired paired_runs(const RateMap& map, int delay) {
  Paired p;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto cfg = tiny(seed);
    cfg.independent = true;
    cfg.csi_delay = delay;
    cfg.scheme = Scheme::kFeedbackFree;
    const auto a = run_episode(cfg, &map);
    cfg.scheme = Scheme::kOptimalFeedback;
    const auto b = run_episode(cfg, nullptr);
    p.ff.push_back(a.v);
    p.opt.push_back(b.v);
    p.ff_bad.push_back(a.bad_cqi_ratio);
    p.opt_bad.push_back(b.bad_cqi_ratio);
  }
  return p;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Sign test of a > b over paired samples; ties are dropped.
double sign_p(const std::vector<double>& a, const std::vector<double>& b) {
  int wins = 0, losses = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i] + 1e-12) ++wins;
    if (a[i] < b[i] - 1e-12) ++losses;
  }
  return oracle::sign_test_p(wins, losses);
}

Outcome delay_robustness(const Paired& delayed, const Paired& fresh) {
  const double ff1 = mean(delayed.ff), opt1 = mean(delayed.opt);
  const double ff0 = mean(fresh.ff), opt0 = mean(fresh.opt);
  const double p1 = sign_p(delayed.ff, delayed.opt);
  const double p0 = sign_p(fresh.opt, fresh.ff);
  const bool pass = ff1 >= opt1 && p1 < 0.05 && opt0 > ff0 && p0 < 0.05;
  char buf[256];
  std::snprintf(buf, sizeof buf, "delay 1: V_ff=%.4f V_opt=%.4f p=%.2g; delay 0: V_ff=%.4f V_opt=%.4f p=%.2g", ff1,
                opt1, p1, ff0, opt0, p0);
  return {pass, buf};
}

Outcome bad_cqi(const Paired& delayed) {
  const double ff = mean(delayed.ff_bad), opt = mean(delayed.opt_bad);
  return {ff <= opt, fmt("bad-CQI ratio ff=%.4f opt=%.4f", ff, opt)};
}

Outcome load_monotonicity(const RateMap& map) {
  std::vector<double> fractions;
  for (double scale : {0.125, 0.25, 0.5, 1.0, 2.0}) {
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto cfg = tiny(seed);
      cfg.arrival_scale = scale;
      sum += run_episode(cfg, &map).heavy_fraction;
    }
    fractions.push_back(sum / 20.0);
  }
  bool ok = true;
  std::string detail = "heavy_fraction";
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (i > 0 && fractions[i] < fractions[i - 1]) ok = false;
    detail += fmt(" %.3f", fractions[i]);
  }
  return {ok, detail};
}

Outcome three_bs_smoke() {
  auto cfg = preset("paper-3bs");
  cfg.episode_slots = 100;
  cfg.node_limit = 10000;
  const auto t_map = Clock::now();
  const RateMap map = build_map(cfg.network, CqiTable::standard());
  const double map_s = seconds_since(t_map);

  const fs::path dir = fs::temp_directory_path() / "fdran_acceptance_paper3bs";
  fs::create_directories(dir);
  const auto t0 = Clock::now();
  const auto m = run_episode(cfg, &map);
  {
    std::ofstream slot(dir / "episode_1.csv"), dispatch(dir / "dispatch_1.csv"), agg(dir / "aggregate.csv");
    write_slot_csv(m, slot);
    write_dispatch_csv(m, dispatch);
    write_aggregate_header(agg);
    write_aggregate_row(cfg.seed, m, agg);
  }
  const double run_s = seconds_since(t0);
  bool files_ok = true;
  for (const char* f : {"episode_1.csv", "dispatch_1.csv", "aggregate.csv"}) {
    files_ok = files_ok && fs::exists(dir / f) && fs::file_size(dir / f) > 0;
  }
  fs::remove_all(dir);
  const bool ok = run_s < 10.0 && files_ok && m.records.size() == 100u * static_cast<std::size_t>(cfg.users);
  char buf[256];
  std::snprintf(buf, sizeof buf, "episode+CSVs %.2f s (map build %.1f s, not timed), V=%.3f, decisions=%zu", run_s,
                map_s, m.v, m.dispatch.size());
  return {ok, buf};
}

}  // namespace

int main() {
  const auto models = light_instances();
  std::vector<SolveResult> results;
  report(1, "greedy optimality", greedy_optimality);
  report(2, "TSRA exactness", [&] { return tsra_exactness(models, results); });
  report(3, "stage ordering", [&] {
    if (results.size() != models.size()) return Outcome{false, "criterion 2 did not complete"};
    return stage_ordering(models, results);
  });
  report(4, "pump feasibility", [&] { return pump_feasibility(models); });
  report(5, "MIESM identity", miesm_identity);
  report(6, "rate golden value", golden_rate);

  const RateMap map = build_map(tiny(1).network, CqiTable::standard());
  report(7, "simulator conservation", [&] { return conservation(map); });
  Paired delayed, fresh;
  report(8, "delay robustness direction", [&] {
    delayed = paired_runs(map, 1);
    fresh = paired_runs(map, 0);
    return delay_robustness(delayed, fresh);
  });
  report(9, "bad-CQI direction", [&] {
    if (delayed.ff.empty()) return Outcome{false, "criterion 8 did not complete"};
    return bad_cqi(delayed);
  });
  report(10, "load classification monotonicity", [&] { return load_monotonicity(map); });
  report(11, "3-BS preset smoke run", three_bs_smoke);

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
