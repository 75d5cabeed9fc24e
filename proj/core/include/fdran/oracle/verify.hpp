// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fdran/ilp/model.hpp"
#include "fdran/sched/heavy.hpp"
#include "fdran/tsra/tsra.hpp"

namespace fdran {

struct VerifyCaps {
  int heavy_instances = 200;
  int heavy_max_users = 4;
  std::int64_t heavy_max_k = 12;
  int light_instances = 100;
  int light_max_bs = 3;
  int light_max_users = 3;
  std::int64_t light_max_k = 8;
  std::uint64_t seed = 1;

  /// Throws ConfigError when a cap exceeds what enumeration handles quickly.
  void validate() const;
};

/// Solver hooks, replaceable so tests can inject a broken scheduler.
struct VerifyHooks {
  std::function<HeavyAllocation(const std::vector<UserDemand>&, std::int64_t, double)> heavy = greedy_schedule;
  std::function<SolveResult(const IlpModel&)> light = [](const IlpModel& m) { return tsra(m); };
};

struct SuiteResult {
  std::string name;
  int passed = 0;
  int total = 0;
  std::vector<std::string> failures;  // first few mismatches, human readable

  bool ok() const { return passed == total; }
};

struct VerifyReport {
  std::vector<SuiteResult> suites;

  bool ok() const;
  std::string table() const;
};

/// Random heavy-load instance: sum of required subcarriers exceeds K.
std::vector<UserDemand> random_heavy_instance(std::uint64_t seed, int max_users, std::int64_t max_k,
                                              std::int64_t* k_out);

/// Random light-load ILP instance (JT-of-all minimal allocation fits in K).
IlpModel random_light_instance(std::uint64_t seed, int max_bs, int max_users, std::int64_t max_k);

VerifyReport run_verify(const VerifyCaps& caps, const VerifyHooks& hooks = {});

}  // namespace fdran
