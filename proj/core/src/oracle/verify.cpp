// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/oracle/verify.hpp"

#include <cmath>
#include <sstream>

#include "fdran/common/error.hpp"
#include "fdran/common/random.hpp"
#include "fdran/oracle/brute_force.hpp"

namespace fdran {
namespace {

constexpr std::size_t kMaxFailureNotes = 5;

void note(SuiteResult& r, const std::string& msg) {
  if (r.failures.size() < kMaxFailureNotes) r.failures.push_back(msg);
}

}  // namespace

void VerifyCaps::validate() const {
  auto in = [](auto v, auto lo, auto hi) { return v >= lo && v <= hi; };
  if (!in(heavy_max_users, 1, 5) || !in(heavy_max_k, std::int64_t{1}, std::int64_t{14})) {
    throw Error(ErrorCode::kConfigError, "heavy caps must satisfy N <= 5, K <= 14");
  }
  if (!in(light_max_bs, 1, 3) || !in(light_max_users, 1, 3) || !in(light_max_k, std::int64_t{1}, std::int64_t{10})) {
    throw Error(ErrorCode::kConfigError, "light caps must satisfy M <= 3, N <= 3, K <= 10");
  }
  if (light_max_k < light_max_users) throw Error(ErrorCode::kConfigError, "light K cap must be >= user cap");
  if (heavy_instances < 0 || light_instances < 0) throw Error(ErrorCode::kConfigError, "negative instance count");
}

bool VerifyReport::ok() const {
  for (const auto& s : suites) {
    if (!s.ok()) return false;
  }
  return true;
}

std::string VerifyReport::table() const {
  std::ostringstream out;
  out << "suite                     passed/total  status\n";
  for (const auto& s : suites) {
    std::string name = s.name;
    name.resize(26, ' ');
    out << name << s.passed << '/' << s.total << "  " << (s.ok() ? "PASS" : "FAIL") << '\n';
    for (const auto& f : s.failures) out << "  " << f << '\n';
  }
  return out.str();
}

std::vector<UserDemand> random_heavy_instance(std::uint64_t seed, int max_users, std::int64_t max_k,
                                              std::int64_t* k_out) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(hash_keys({seed, 0x6865617679ULL, attempt}));
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_users)));
    const std::int64_t k = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_k)));
    std::vector<UserDemand> users;
    std::int64_t need = 0;
    for (int i = 0; i < n; ++i) {
      UserDemand u;
      u.user_id = i;
      u.weight = rng.uniform(0.1, 1.0);
      u.rate_per_subcarrier = 1000 * (1 + static_cast<std::int64_t>(rng.below(50)));
      const auto kd = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(k + 2)));
      u.demand_rate = u.rate_per_subcarrier * (kd - 1) + 1 +
                      static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(u.rate_per_subcarrier)));
      need += kd;
      users.push_back(u);
    }
    if (need > k) {
      *k_out = k;
      return users;
    }
  }
}

IlpModel random_light_instance(std::uint64_t seed, int max_bs, int max_users, std::int64_t max_k) {
  Rng rng(hash_keys({seed, 0x6c69676874ULL}));
  const int m = max_bs <= 1 ? 1 : 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_bs - 1)));
  const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_users)));
  const std::int64_t k = n + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_k - n + 1)));
  const auto sets = enumerate_coop_sets(m);
  std::vector<LightUser> users;
  for (int i = 0; i < n; ++i) {
    std::vector<std::int64_t> per_bs(static_cast<std::size_t>(m));
    for (auto& r : per_bs) r = 1000 * (1 + static_cast<std::int64_t>(rng.below(20)));
    LightUser u{i, 0, std::vector<std::int64_t>(sets.size())};
    for (const auto& s : sets) {
      double sum = 0.0;
      for (int b = 0; b < m; ++b) {
        if (s.mask & (CoopMask{1} << b)) sum += static_cast<double>(per_bs[static_cast<std::size_t>(b)]);
      }
      u.rates[s.mask - 1] = std::max<std::int64_t>(1, std::llround(sum * rng.uniform(0.6, 1.0)));
    }
    const auto full = u.rates[sets.empty() ? 0 : static_cast<std::size_t>((CoopMask{1} << m) - 2)];
    const std::int64_t share = std::max<std::int64_t>(1, k / n);
    const auto need = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(share)));
    u.demand = full * (need - 1) + 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(full)));
    users.push_back(std::move(u));
  }
  return build_ilp(users, m, k, 1.0, 1000.0);
}

VerifyReport run_verify(const VerifyCaps& caps, const VerifyHooks& hooks) {
  caps.validate();
  VerifyReport report;

  SuiteResult heavy{"greedy-vs-enumeration", 0, 0, {}};
  for (int i = 0; i < caps.heavy_instances; ++i) {
    std::int64_t k = 0;
    const auto users = random_heavy_instance(hash_keys({caps.seed, static_cast<std::uint64_t>(i)}), caps.heavy_max_users,
                                             caps.heavy_max_k, &k);
    const double eta_min = (i % 2 == 0) ? 0.0 : 0.1;
    const auto best = heavy_enumeration_optimum(users, k, eta_min);
    ++heavy.total;
    std::ostringstream msg;
    msg << "instance " << i << " (N=" << users.size() << ", K=" << k << ", eta_min=" << eta_min << "): ";
    try {
      const auto alloc = hooks.heavy(users, k, eta_min);
      if (best && std::fabs(alloc.objective - *best) <= 1e-9) {
        ++heavy.passed;
      } else {
        msg << "greedy V=" << alloc.objective << " enumeration V=" << (best ? std::to_string(*best) : "infeasible");
        note(heavy, msg.str());
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kFairnessInfeasible && !best) {
        ++heavy.passed;
      } else {
        msg << e.what();
        note(heavy, msg.str());
      }
    }
  }
  report.suites.push_back(std::move(heavy));

  SuiteResult light{"tsra-vs-enumeration", 0, 0, {}};
  for (int i = 0; i < caps.light_instances; ++i) {
    const auto model = random_light_instance(hash_keys({caps.seed, 0x7473ULL, static_cast<std::uint64_t>(i)}),
                                             caps.light_max_bs, caps.light_max_users, caps.light_max_k);
    const auto best = light_enumeration_optimum(model);
    ++light.total;
    std::ostringstream msg;
    msg << "instance " << i << " (M=" << model.m << ", N=" << model.num_users() << ", K=" << model.k << "): ";
    try {
      const auto res = hooks.light(model);
      const auto units = energy_units(model, res.best);
      if (best && units == *best && check_assignment(model, res.best).feasible) {
        ++light.passed;
      } else {
        msg << "tsra units=" << units << " enumeration units=" << (best ? std::to_string(*best) : "none");
        note(light, msg.str());
      }
    } catch (const Error& e) {
      msg << e.what();
      note(light, msg.str());
    }
  }
  report.suites.push_back(std::move(light));
  return report;
}

}  // namespace fdran
